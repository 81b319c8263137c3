"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A run configuration is malformed (unknown keys, invalid values)."""


class StepFailureError(RuntimeError):
    """A stochastic integrator step could not be completed.

    Carries enough state to reproduce the failure: the step index of the
    first failing step and the value of the state variable just before it.
    """

    def __init__(self, message, step_index=None, state=None, n_failed=None):
        super().__init__(message)
        self.step_index = step_index
        self.state = state
        self.n_failed = n_failed


class QuadratureError(RuntimeError):
    """An adaptive integrator exhausted its subdivision budget.

    The best available estimate and its error bound are attached so callers
    can decide whether the partial answer is still usable.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
