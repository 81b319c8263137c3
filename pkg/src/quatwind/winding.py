"""Monte Carlo samples of the winding vector by two independent routes.

``simulate_timechange`` uses the skew-product structure: simulate the
geometry's radial diffusion, accumulate its clock A_t, and draw
zeta = sqrt(A_t) * g with g standard 3-d Gaussian.

``simulate_direct`` integrates the ambient process itself (a 4-d Gaussian
walk on the flat space, an Euler scheme for the inhomogeneous-coordinate
SDE on the curved spaces) and accumulates the winding one-form along the
discrete path with the midpoint rule.

The two routes share no code path beyond the RNG policy, which makes their
distributional agreement a genuine cross-validation of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, radial, rng
from .errors import DomainError, StepFailureError

__all__ = ["Geometry", "WindingSamples", "simulate_timechange", "simulate_direct"]

_HALF_PI = 0.5 * math.pi

FLAT = "flat"
HP1 = "hp1"
HH1 = "hh1"


@dataclass(frozen=True)
class Geometry:
    """One of the three quaternionic geometries plus the start radius."""

    kind: str
    start_radius: float

    def __post_init__(self):
        if self.kind not in (FLAT, HP1, HH1):
            raise DomainError(f"unknown geometry {self.kind!r}")
        if self.start_radius <= 0.0:
            raise DomainError("start radius must be positive")
        if self.kind == HP1 and self.start_radius >= _HALF_PI:
            raise DomainError("projective start radius must lie in (0, pi/2)")

    def radial_spec(self):
        if self.kind == FLAT:
            return radial.RadialSpec("bessel", self.start_radius, dimension=4.0)
        if self.kind == HP1:
            return radial.RadialSpec("jacobi_trig", self.start_radius, c=3.0)
        return radial.RadialSpec("jacobi_hyp", self.start_radius, alpha=1.5, beta=1.5)

    def clock_kind(self):
        return {
            FLAT: radial.CLOCK_INV_R2,
            HP1: radial.CLOCK_TRIG,
            HH1: radial.CLOCK_HYP,
        }[self.kind]

    def ambient_start(self):
        """Start point of the ambient process in (inhomogeneous) coordinates."""
        r0 = self.start_radius
        if self.kind == FLAT:
            return np.array([r0, 0.0, 0.0, 0.0])
        if self.kind == HP1:
            return np.array([math.tan(r0), 0.0, 0.0, 0.0])
        return np.array([math.tanh(r0), 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class WindingSamples:
    """A batch of winding draws; ``clock`` is None for the direct route.

    ``n_failed`` counts paths dropped because of step failures (only ever
    nonzero when the caller asked for dropping instead of raising).
    """

    zeta: np.ndarray
    clock: np.ndarray | None
    horizon: float
    n_failed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "zeta", np.asarray(self.zeta, dtype=np.float64))
        if self.clock is not None:
            clock = np.asarray(self.clock, dtype=np.float64)
            object.__setattr__(self, "clock", clock)
            if np.any(clock < 0.0):
                raise DomainError("clocks must be nonnegative")

    def __len__(self):
        return self.zeta.shape[0]


def simulate_timechange(geom, t, n_paths, master_seed, substream=0, policy=None):
    """Winding samples via the radial + time-changed Gaussian route.

    Path i consumes, from its stream (master_seed, i, substream), first the
    radial increments and then the 3 normals of the Gaussian draw.
    """
    if not isinstance(geom, Geometry):
        raise DomainError("geom must be a Geometry")
    if t <= 0.0 or n_paths < 1:
        raise DomainError("need t > 0 and at least one path")
    policy = policy or radial.StepPolicy()
    if geom.kind == FLAT:
        _, clock, extras = radial.bessel4_endpoint_samples(
            geom.start_radius, t, policy, master_seed, substream, n_paths,
            extra_normals=3,
        )
    else:
        _, clock, extras, fail_step, fail_state = radial.implicit_endpoint_samples(
            geom.radial_spec(), t, policy, geom.clock_kind(), master_seed,
            substream, n_paths, extra_normals=3,
        )
        _raise_on_failures(fail_step, fail_state)
    zeta = np.sqrt(clock)[:, None] * extras
    return WindingSamples(zeta, clock, t)


def simulate_direct(geom, t, step, n_paths, master_seed, substream=0,
                    on_failure="raise"):
    """Winding samples via direct integration of the ambient process.

    ``step`` is the uniform Euler step.  Curved geometries can fail a step
    (hyperbolic proposals leaving the unit ball, projective coordinates
    overflowing near the antipodal point); ``on_failure`` chooses between
    raising StepFailureError (default) and dropping the failed paths, which
    is only acceptable when failures are rare.
    """
    if not isinstance(geom, Geometry):
        raise DomainError("geom must be a Geometry")
    if t <= 0.0 or step <= 0.0 or n_paths < 1:
        raise DomainError("need t > 0, step > 0 and at least one path")
    if on_failure not in ("raise", "drop"):
        raise DomainError("on_failure must be 'raise' or 'drop'")
    n = max(1, int(math.ceil(t / step)))
    dt = np.diff(np.linspace(0.0, t, n + 1))
    start = geom.ambient_start()
    zeta = np.empty((n_paths, 3))
    fail_step = np.empty(n_paths, dtype=np.int64)
    fail_state = np.full(n_paths, np.nan)
    per_path = 4 * n
    for first, count in radial._chunks(n_paths, per_path):
        block = rng.path_block(master_seed, substream, first, count, per_path)
        dw = block.reshape(count, n, 4)
        if geom.kind == FLAT:
            z, fs = kernels.direct_flat(start, dt, dw)
            fx = np.full(count, np.nan)
        else:
            geom_id = kernels.GEOM_HP1 if geom.kind == HP1 else kernels.GEOM_HH1
            z, fs, fx = kernels.direct_curved(geom_id, start, dt, dw)
        zeta[first : first + count] = z
        fail_step[first : first + count] = fs
        fail_state[first : first + count] = fx
    failed = fail_step >= 0
    n_failed = int(np.count_nonzero(failed))
    if n_failed and on_failure == "raise":
        _raise_failure(fail_step, fail_state, n_failed)
    if n_failed:
        zeta = zeta[~failed]
        if zeta.shape[0] == 0:
            _raise_failure(fail_step, fail_state, n_failed)
    return WindingSamples(zeta, None, t, n_failed=n_failed)


def _raise_on_failures(fail_step, fail_state):
    failed = fail_step >= 0
    n_failed = int(np.count_nonzero(failed))
    if n_failed:
        _raise_failure(fail_step, fail_state, n_failed)


def _raise_failure(fail_step, fail_state, n_failed):
    i = int(np.argmax(fail_step >= 0))
    raise StepFailureError(
        f"{n_failed} path(s) failed, first at step {int(fail_step[i])} "
        f"from state {fail_state[i]!r}; retry with a smaller step",
        step_index=int(fail_step[i]),
        state=float(fail_state[i]),
        n_failed=n_failed,
    )
