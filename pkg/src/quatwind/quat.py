"""Quaternion algebra, polar decomposition and the su(2) winding one-form.

Quaternions are float64 arrays ``[t, x, y, z]`` (scalar part first); the
basis units I, J, K multiply by the usual rules I*J = K, J*K = I, K*I = J,
I^2 = J^2 = K^2 = -1.  su(2) elements ("winding vectors") are float64
arrays ``[v1, v2, v3]`` of coordinates in the (I, J, K) basis.  All
functions broadcast over leading axes, so a discrete path is simply an
``(n, 4)`` array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "quaternion",
    "mul",
    "conj",
    "norm",
    "imag",
    "polar_decompose",
    "adjoint_rotation",
    "winding_form",
    "SampledPath",
    "stratonovich_winding",
]

# Relative norm threshold below which a segment midpoint counts as passing
# through the origin, where the winding form is singular.
MIDPOINT_DEGENERACY_RTOL = 1e-12


def quaternion(t, x=0.0, y=0.0, z=0.0):
    """Build a quaternion array from real coordinates."""
    return np.array([t, x, y, z], dtype=np.float64)


def mul(p, q):
    """Quaternion product, broadcasting over leading axes."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    p0, p1, p2, p3 = np.moveaxis(p, -1, 0)
    q0, q1, q2, q3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 + p2 * q0 + p3 * q1 - p1 * q3,
            p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
        ],
        axis=-1,
    )


def conj(q):
    """Quaternion conjugate."""
    q = np.asarray(q, dtype=np.float64)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def norm(q):
    """Euclidean norm |q|."""
    q = np.asarray(q, dtype=np.float64)
    return np.sqrt(np.sum(q * q, axis=-1))


def imag(q):
    """Imaginary part of a quaternion as a 3-vector in the (I, J, K) basis."""
    q = np.asarray(q, dtype=np.float64)
    return q[..., 1:].copy()


def polar_decompose(q):
    """Split q = radius * theta with radius = |q| and |theta| = 1.

    Raises DomainError for the zero quaternion, which has no direction.
    """
    q = np.asarray(q, dtype=np.float64)
    r = norm(q)
    if np.any(r == 0.0):
        raise DomainError("polar decomposition undefined at the zero quaternion")
    return r, q / r[..., None]


def adjoint_rotation(u, v):
    """Adjoint action of a unit quaternion u on a 3-vector v: Im(u (0,v) u^-1).

    For |u| = 1 this is an orthogonal map of R^3.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    pure = np.zeros(v.shape[:-1] + (4,))
    pure[..., 1:] = v
    return imag(mul(mul(u, pure), conj(u)))


def winding_form(q, dq):
    """Evaluate the winding one-form at q on the tangent vector dq.

    Components in the (I, J, K) basis:

        eta1 = (t dx - x dt + z dy - y dz) / |q|^2
        eta2 = (t dy - y dt + x dz - z dx) / |q|^2
        eta3 = (t dz - z dt + y dx - x dy) / |q|^2

    which coincides with Im(conj(q) dq) / |q|^2.  Raises DomainError at
    q = 0 where the form is singular.
    """
    q = np.asarray(q, dtype=np.float64)
    dq = np.asarray(dq, dtype=np.float64)
    n2 = np.sum(q * q, axis=-1)
    if np.any(n2 == 0.0):
        raise DomainError("winding form is singular at the origin")
    t, x, y, z = np.moveaxis(q, -1, 0)
    dt, dx, dy, dz = np.moveaxis(dq, -1, 0)
    eta = np.stack(
        [
            t * dx - x * dt + z * dy - y * dz,
            t * dy - y * dt + x * dz - z * dx,
            t * dz - z * dt + y * dx - x * dy,
        ],
        axis=-1,
    )
    return eta / n2[..., None]


@dataclass(frozen=True)
class SampledPath:
    """A discrete path in the punctured quaternions.

    ``times`` must be strictly increasing and ``points`` an (n, 4) array of
    nonzero quaternions sampled at those times.
    """

    times: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        points = np.asarray(self.points, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)
        if times.ndim != 1 or points.ndim != 2 or points.shape != (times.size, 4):
            raise DomainError("path needs times (n,) and points (n, 4)")
        if times.size >= 2 and np.any(np.diff(times) <= 0.0):
            raise DomainError("path times must be strictly increasing")
        if np.any(np.sum(points * points, axis=-1) == 0.0):
            raise DomainError("path passes through the origin")

    def __len__(self):
        return self.times.size


def stratonovich_winding(path):
    """Discrete Stratonovich line integral of the winding form along a path.

    Uses the midpoint rule: each segment contributes the form evaluated at
    (q_i + q_{i+1}) / 2 on q_{i+1} - q_i, which makes left-invariance of the
    result exact at the discrete level.  Raises DomainError if the path has
    fewer than two points or a segment midpoint collapses onto the origin.
    """
    if not isinstance(path, SampledPath):
        path = SampledPath(*path)
    if len(path) < 2:
        raise DomainError("winding needs at least two path points")
    q = path.points
    dq = q[1:] - q[:-1]
    mid = 0.5 * (q[1:] + q[:-1])
    scale = np.maximum(norm(q[1:]), norm(q[:-1]))
    bad = norm(mid) < MIDPOINT_DEGENERACY_RTOL * scale
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(f"path through origin between samples {i} and {i + 1}")
    eta = winding_form(mid, dq)
    return np.array([math.fsum(eta[:, k].tolist()) for k in range(3)])
