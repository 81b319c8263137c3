"""Radial diffusions and their additive clock functionals.

Three families cover every radial process used by the winding laws:

* ``bessel``       drift (delta - 1) / (2 r) on (0, inf), delta >= 2
* ``jacobi_trig``  drift c * cot(2 r) on (0, pi/2), c >= 1
* ``jacobi_hyp``   drift a * coth(r) + b * tanh(r) on (0, inf), a >= 1/2

The dimension-4 Bessel radius is sampled exactly in law as the norm of a
4-d Gaussian walk; everything else uses a drift-implicit Euler scheme whose
scalar step equation is monotone and therefore domain-preserving.  Clocks
(time-change integrands) are accumulated with the trapezoid rule along the
simulated grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, rng
from .errors import DomainError, StepFailureError

__all__ = [
    "CLOCK_NONE",
    "CLOCK_INV_R2",
    "CLOCK_TRIG",
    "CLOCK_HYP",
    "RadialSpec",
    "StepPolicy",
    "RadialPath",
    "simulate_bessel4_exact",
    "simulate_radial_implicit",
    "bessel4_endpoint_samples",
    "implicit_endpoint_samples",
]

# Clock kinds, by their integrand.
CLOCK_NONE = "none"
CLOCK_INV_R2 = "inv_r_squared"
CLOCK_TRIG = "four_over_sin_sq_2r"
CLOCK_HYP = "four_over_sinh_sq_2r"

_CLOCK_IDS = {
    CLOCK_NONE: kernels.CLOCK_NONE,
    CLOCK_INV_R2: kernels.CLOCK_INV_R2,
    CLOCK_TRIG: kernels.CLOCK_TRIG,
    CLOCK_HYP: kernels.CLOCK_HYP,
}

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class RadialSpec:
    """One radial diffusion: drift family, drift parameters, start point.

    Boundary-attracting parameter sets are rejected here: every accepted
    spec has a drift that repels from each attainable boundary at least as
    strongly as a dimension-2 Bessel process, so the exact process never
    reaches the boundary and the implicit scheme stays strictly inside.
    """

    kind: str
    r0: float
    dimension: float | None = None  # bessel
    c: float | None = None  # jacobi_trig
    alpha: float | None = None  # jacobi_hyp
    beta: float | None = None  # jacobi_hyp

    def __post_init__(self):
        if self.r0 <= 0.0:
            raise DomainError("r0 must be positive")
        if self.kind == "bessel":
            if self.dimension is None or self.dimension < 2.0:
                raise DomainError("bessel dimension must be >= 2 (origin attracting otherwise)")
        elif self.kind == "jacobi_trig":
            if self.c is None or self.c < 1.0:
                raise DomainError("cot(2r) drift coefficient must be >= 1 (boundary attracting otherwise)")
            if not 0.0 < self.r0 < _HALF_PI:
                raise DomainError("jacobi_trig starts in (0, pi/2)")
        elif self.kind == "jacobi_hyp":
            if self.alpha is None or self.beta is None:
                raise DomainError("jacobi_hyp needs coth and tanh coefficients")
            if self.alpha < 0.5:
                raise DomainError("coth drift coefficient must be >= 1/2 (origin attracting otherwise)")
            if self.beta > self.alpha:
                raise DomainError("tanh coefficient above coth coefficient breaks step monotonicity")
        else:
            raise DomainError(f"unknown radial kind {self.kind!r}")

    def kernel_args(self):
        if self.kind == "bessel":
            return kernels.KIND_BESSEL, self.dimension, 0.0
        if self.kind == "jacobi_trig":
            return kernels.KIND_TRIG, self.c, 0.0
        return kernels.KIND_HYP, self.alpha, self.beta


@dataclass(frozen=True)
class StepPolicy:
    """Time-grid policy for the radial integrators.

    ``uniform`` uses step ``h`` throughout.  ``geometric`` keeps a uniform
    head segment [0, 1] at step ``h`` and then grows cells geometrically by
    ``1/theta`` with ``substeps`` uniform sub-steps per cell, giving a fixed
    cost per decade of horizon (the Bessel clock integrand decays like 1/s,
    so late times need far less resolution).  ``auto`` switches from
    uniform to geometric beyond ``uniform_horizon``.
    """

    mode: str = "auto"
    h: float = 1e-3
    uniform_horizon: float = 100.0
    theta: float = 0.5
    substeps: int = 32
    bisect_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if self.mode not in ("auto", "uniform", "geometric"):
            raise DomainError(f"unknown step policy mode {self.mode!r}")
        if self.h <= 0.0 or not 0.0 < self.theta < 1.0 or self.substeps < 1:
            raise DomainError("invalid step policy parameters")

    def grid(self, t):
        """Time grid from 0 to t (inclusive) under this policy."""
        if t <= 0.0:
            raise DomainError("horizon must be positive")
        geometric = self.mode == "geometric" or (
            self.mode == "auto" and t > self.uniform_horizon
        )
        if not geometric or t <= 1.0:
            n = max(1, int(math.ceil(t / self.h)))
            return np.linspace(0.0, t, n + 1)
        head = 1.0
        n_head = max(1, int(math.ceil(head / self.h)))
        times = [np.linspace(0.0, head, n_head + 1)]
        n_cells = max(1, int(math.ceil(math.log(t / head) / math.log(1.0 / self.theta))))
        bounds = head * (t / head) ** (np.arange(n_cells + 1) / n_cells)
        bounds[-1] = t
        for k in range(n_cells):
            cell = np.linspace(bounds[k], bounds[k + 1], self.substeps + 1)
            times.append(cell[1:])
        return np.concatenate(times)

    def to_dict(self):
        return {
            "mode": self.mode,
            "h": self.h,
            "uniform_horizon": self.uniform_horizon,
            "theta": self.theta,
            "substeps": self.substeps,
            "bisect_tol": self.bisect_tol,
            "max_iter": self.max_iter,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass(frozen=True)
class RadialPath:
    """One simulated radial path with its accumulated clock."""

    times: np.ndarray
    values: np.ndarray
    clock: np.ndarray

    def __post_init__(self):
        for name in ("times", "values", "clock"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=np.float64))
        if not (self.times.shape == self.values.shape == self.clock.shape):
            raise DomainError("times, values and clock must share a shape")
        if self.clock.size and (self.clock[0] != 0.0 or np.any(np.diff(self.clock) < 0.0)):
            raise DomainError("clock must start at 0 and be nondecreasing")


def _check_grid(grid):
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size < 1 or grid[0] != 0.0:
        raise DomainError("grid must be a 1-d array starting at 0")
    if grid.size > 1 and np.any(np.diff(grid) <= 0.0):
        raise DomainError("grid times must be strictly increasing")
    return grid


def simulate_bessel4_exact(r0, grid, stream):
    """Dimension-4 Bessel radius, exact in law at every grid time.

    ``stream`` is a numpy Generator (see :mod:`quatwind.rng`); the walk
    consumes ``4 * (len(grid) - 1)`` standard normals from it.
    """
    if r0 <= 0.0:
        raise DomainError("r0 must be positive")
    grid = _check_grid(grid)
    n = grid.size - 1
    if n == 0:
        return RadialPath(grid, np.full(1, float(r0)), np.zeros(1))
    dw = stream.standard_normal((1, n, 4))
    _, _, rpath, apath = kernels.bessel4_paths(r0, np.diff(grid), dw)
    return RadialPath(grid, rpath[0], apath[0])


def simulate_radial_implicit(spec, t, policy, stream, clock=None):
    """Drift-implicit Euler path of a radial diffusion with its clock.

    The implicit step equation ``r' = r + h b(r') + dW`` is solved by
    safeguarded monotone root-finding bracketed against the domain
    boundaries; the solution stays strictly inside the state domain.  A
    root-finder that exhausts its iteration cap raises StepFailureError
    carrying the step index and the pre-step state.
    """
    if not isinstance(spec, RadialSpec):
        raise DomainError("spec must be a RadialSpec")
    policy = policy or StepPolicy()
    grid = policy.grid(t)
    n = grid.size - 1
    clock = clock if clock is not None else _default_clock(spec)
    dz = stream.standard_normal((1, n))
    kind, p1, p2 = spec.kernel_args()
    _, _, fail_step, fail_state, rpath, apath = kernels.implicit_paths(
        kind, p1, p2, spec.r0, np.diff(grid), dz, _CLOCK_IDS[clock],
        policy.bisect_tol, policy.max_iter,
    )
    if fail_step[0] >= 0:
        raise StepFailureError(
            f"implicit step {int(fail_step[0])} did not converge from state {fail_state[0]!r}",
            step_index=int(fail_step[0]),
            state=float(fail_state[0]),
        )
    return RadialPath(grid, rpath[0], apath[0])


def _default_clock(spec):
    return {
        "bessel": CLOCK_INV_R2,
        "jacobi_trig": CLOCK_TRIG,
        "jacobi_hyp": CLOCK_HYP,
    }[spec.kind]


def _chunks(n_paths, per_path_floats):
    budget = 48_000_000  # floats per chunk (~384 MB transient ceiling)
    chunk = max(1, min(n_paths, budget // max(1, per_path_floats)))
    start = 0
    while start < n_paths:
        yield start, min(chunk, n_paths - start)
        start += chunk


def bessel4_endpoint_samples(r0, t, policy, master_seed, substream, n_paths,
                             extra_normals=0):
    """(R_T, A_T) over ``n_paths`` exact dimension-4 radial walks.

    Path ``i`` draws from the stream ``(master_seed, i, substream)``:
    first the 4 walk increments per step, then ``extra_normals`` extra
    values returned per path (used for the time-changed winding draw).
    """
    if r0 <= 0.0:
        raise DomainError("r0 must be positive")
    policy = policy or StepPolicy()
    grid = policy.grid(t)
    n = grid.size - 1
    dt = np.diff(grid)
    rT = np.empty(n_paths)
    aT = np.empty(n_paths)
    extras = np.empty((n_paths, extra_normals))
    per_path = 4 * n + extra_normals
    for start, count in _chunks(n_paths, per_path):
        block = rng.path_block(master_seed, substream, start, count, per_path)
        dw = block[:, : 4 * n].reshape(count, n, 4)
        if extra_normals:
            extras[start : start + count] = block[:, 4 * n :]
        r, a = kernels.bessel4_endpoints(r0, dt, dw)
        rT[start : start + count] = r
        aT[start : start + count] = a
    return rT, aT, extras


def implicit_endpoint_samples(spec, t, policy, clock, master_seed, substream,
                              n_paths, extra_normals=0):
    """(r_T, A_T, extras, fail_step, fail_state) over implicit-Euler paths.

    ``fail_step[i] >= 0`` flags a path whose root-finder failed at that step
    (its outputs are then the last valid state).  Callers decide whether to
    raise or drop; estimators in :mod:`quatwind.laws` refuse to proceed when
    failures exceed a small fraction.
    """
    if not isinstance(spec, RadialSpec):
        raise DomainError("spec must be a RadialSpec")
    policy = policy or StepPolicy()
    grid = policy.grid(t)
    n = grid.size - 1
    dt = np.diff(grid)
    kind, p1, p2 = spec.kernel_args()
    clock_id = _CLOCK_IDS[clock]
    rT = np.empty(n_paths)
    aT = np.empty(n_paths)
    extras = np.empty((n_paths, extra_normals))
    fail_step = np.empty(n_paths, dtype=np.int64)
    fail_state = np.empty(n_paths)
    per_path = n + extra_normals
    for start, count in _chunks(n_paths, per_path):
        block = rng.path_block(master_seed, substream, start, count, per_path)
        dz = block[:, :n]
        if extra_normals:
            extras[start : start + count] = block[:, n:]
        r, a, fs, fx = kernels.implicit_endpoints(
            kind, p1, p2, spec.r0, dt, dz, clock_id,
            policy.bisect_tol, policy.max_iter,
        )
        rT[start : start + count] = r
        aT[start : start + count] = a
        fail_step[start : start + count] = fs
        fail_state[start : start + count] = fx
    return rT, aT, extras, fail_step, fail_state
