"""Closed-form winding laws and their Girsanov-identity estimators.

Flat space
----------
The characteristic function of the winding vector at time t from radius
rho has the exact integral form

    E[exp(i lam . zeta(t))]
        = exp(-rho^2/(2t)) / (t rho)
          * int_0^inf I_nu(r rho / t) exp(-r^2/(2t)) r^2 dr,

with nu = sqrt(1 + |lam|^2); it is evaluated by log-domain quadrature.  The
same quantity equals rho^mu * E[R_t^-mu] with mu = nu - 1 over the
exponentially tilted radial process, which is a Bessel process of dimension
2 mu + 4 (the tilt adds mu/r to the dimension-4 drift 3/(2r)).

Projective space
----------------
With mu = sqrt(1 + |lam|^2) - 1,

    E[exp(i lam . zeta(t))] = sin(2 r0)^mu exp(-2 (|lam|^2 + mu) t)
                              * E~[(sin 2 r_t)^-mu]

where under the tilted law the radius is a Jacobi diffusion with drift
(2 mu + 3) cot(2 r).

Hyperbolic space
----------------
With nu = sqrt(1 + |lam|^2) - 1 the winding converges as t -> inf and

    E[exp(i lam . zeta_inf)] = tanh(r0)^nu (1 + nu / (2 cosh^2 r0)),

the finite-t identity being exp(-4t) tanh(r0)^nu cosh(r0)^-2
* E~[tanh(r_t)^-nu cosh^2(r_t)] over the tilted hyperbolic Jacobi process
with drift (3/2 + nu) coth(r) - (1/2 + nu) tanh(r).  The limit law is a
two-term combination of relativistic Cauchy densities, implemented with an
analytic derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import radial
from .errors import DomainError
from .specfun import integrate, log_bessel_i, log_bessel_k
from .stats import CfEstimate, mean_stderr, _as_lam

__all__ = [
    "CfEstimate",
    "DensityGrid",
    "cf_flat_exact",
    "cf_flat_girsanov",
    "cf_hp1_identity",
    "cf_hh1_identity",
    "cf_hh1_limit",
    "cosh2_moment",
    "relativistic_cauchy_density",
    "hh1_limit_density",
    "hh1_limit_density_grid",
    "radial_cf",
    "radial_cf_fn",
]

_TWO_PI_SQ = 2.0 * math.pi**2


@dataclass(frozen=True)
class DensityGrid:
    """An isotropic density on R^3 tabulated against the radius |x|."""

    radii: np.ndarray
    values: np.ndarray
    start_radius: float

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        if radii.ndim != 1 or radii.shape != values.shape or radii.size < 3:
            raise DomainError("need matching 1-d radii/values with >= 3 points")
        if radii[0] < 0.0 or np.any(np.diff(radii) <= 0.0):
            raise DomainError("radii must be nonnegative and increasing")
        if np.any(values < 0.0):
            raise DomainError("density values must be nonnegative")


def _log_i_vec(nu, xs):
    out = np.empty(xs.shape)
    flat = xs.ravel()
    res = out.ravel()
    for i in range(flat.size):
        res[i] = log_bessel_i(nu, flat[i])
    return out


def cf_flat_exact(lam, t, rho, rel_tol=1e-10):
    """Exact flat-space winding characteristic function by quadrature."""
    lam = _as_lam(lam)
    if t <= 0.0 or rho <= 0.0:
        raise DomainError("need t > 0 and rho > 0")
    nu = math.sqrt(1.0 + float(lam @ lam))
    inv_2t = 0.5 / t
    scale = rho / t
    log_pref = -rho * rho * inv_2t - math.log(t * rho)
    rmax = 12.0 * math.sqrt(t) + t * rho

    def log_integrand(r):
        r = np.asarray(r, dtype=np.float64)
        out = np.full(r.shape, -np.inf)
        pos = r > 0.0
        rp = r[pos]
        out[pos] = _log_i_vec(nu, scale * rp) - rp * rp * inv_2t + 2.0 * np.log(rp)
        return out

    scan = rmax * np.logspace(-12.0, 0.0, 1024)
    levels = log_integrand(scan)
    peak = int(np.argmax(levels))
    shift = float(levels[peak])
    # Restrict to where the integrand is within 60 nats of its peak; the
    # excluded tail of [0, rmax] contributes < 1e-25 of the result.
    above = np.nonzero(levels[peak:] > shift - 60.0)[0]
    r_hi = scan[min(peak + int(above[-1]) + 1, scan.size - 1)] if above.size else rmax

    def integrand(r):
        return np.exp(log_integrand(r) - shift)

    total = integrate(integrand, 0.0, r_hi, rel_tol=rel_tol)
    value = math.exp(log_pref + shift + math.log(total))
    return CfEstimate(lam, complex(value, 0.0), 0.0)


def _girsanov_mu(lam):
    return math.sqrt(1.0 + float(lam @ lam)) - 1.0


def _check_failures(fail_step, max_fraction=0.0):
    n_failed = int(np.count_nonzero(fail_step >= 0))
    if n_failed > max_fraction * fail_step.size:
        from .errors import StepFailureError

        i = int(np.argmax(fail_step >= 0))
        raise StepFailureError(
            f"{n_failed} radial path(s) failed at step {int(fail_step[i])}",
            step_index=int(fail_step[i]),
            n_failed=n_failed,
        )


def cf_flat_girsanov(lam, t, rho, n_paths, master_seed, substream=0, policy=None):
    """Flat identity estimator rho^mu * mean(R_t^-mu) over tilted paths.

    The tilted radius is a Bessel process of dimension 2 mu + 4 started at
    rho (mu = sqrt(1+|lam|^2) - 1); at lam = 0 the tilt is empty and the
    estimator returns exactly 1 with zero standard error.
    """
    lam = _as_lam(lam)
    if t <= 0.0 or rho <= 0.0 or n_paths < 1:
        raise DomainError("need t > 0, rho > 0 and at least one path")
    mu = _girsanov_mu(lam)
    spec = radial.RadialSpec("bessel", rho, dimension=2.0 * mu + 4.0)
    r_t, _, _, fail_step, _ = radial.implicit_endpoint_samples(
        spec, t, policy or radial.StepPolicy(), radial.CLOCK_NONE,
        master_seed, substream, n_paths,
    )
    _check_failures(fail_step)
    weights = np.exp(mu * (math.log(rho) - np.log(r_t)))
    mean, se = mean_stderr(weights)
    return CfEstimate(lam, complex(mean, 0.0), se, n_paths)


def cf_hp1_identity(lam, t, r0, n_paths, master_seed, substream=0, policy=None):
    """Projective identity estimator over the tilted trigonometric Jacobi.

    Returns sin(2 r0)^mu exp(-2(|lam|^2 + mu) t) * mean((sin 2 r_t)^-mu)
    with the tilted drift (2 mu + 3) cot(2 r).
    """
    lam = _as_lam(lam)
    if t <= 0.0 or not 0.0 < r0 < 0.5 * math.pi or n_paths < 1:
        raise DomainError("need t > 0, r0 in (0, pi/2) and at least one path")
    mu = _girsanov_mu(lam)
    lam2 = float(lam @ lam)
    spec = radial.RadialSpec("jacobi_trig", r0, c=2.0 * mu + 3.0)
    r_t, _, _, fail_step, _ = radial.implicit_endpoint_samples(
        spec, t, policy or radial.StepPolicy(), radial.CLOCK_NONE,
        master_seed, substream, n_paths,
    )
    _check_failures(fail_step)
    pref = math.exp(mu * math.log(math.sin(2.0 * r0)) - 2.0 * (lam2 + mu) * t)
    weights = pref * np.exp(-mu * np.log(np.sin(2.0 * r_t)))
    mean, se = mean_stderr(weights)
    return CfEstimate(lam, complex(mean, 0.0), se, n_paths)


def _log_cosh_arr(x):
    return np.abs(x) - math.log(2.0) + np.log1p(np.exp(-2.0 * np.abs(x)))


def cf_hh1_identity(lam, t, r0, n_paths, master_seed, substream=0, policy=None):
    """Hyperbolic identity estimator over the tilted hyperbolic Jacobi.

    Returns exp(-4t) tanh(r0)^nu cosh(r0)^-2
    * mean(tanh(r_t)^-nu cosh^2(r_t)); the exp(-4t) prefactor compensates
    the exp(4t) growth of the cosh^2 moment, and each path weight is formed
    in the log domain before exponentiation.
    """
    lam = _as_lam(lam)
    if t <= 0.0 or r0 <= 0.0 or n_paths < 1:
        raise DomainError("need t > 0, r0 > 0 and at least one path")
    nu = _girsanov_mu(lam)
    spec = radial.RadialSpec("jacobi_hyp", r0, alpha=1.5 + nu, beta=-(0.5 + nu))
    r_t, _, _, fail_step, _ = radial.implicit_endpoint_samples(
        spec, t, policy or radial.StepPolicy(), radial.CLOCK_NONE,
        master_seed, substream, n_paths,
    )
    _check_failures(fail_step)
    log_pref = nu * math.log(math.tanh(r0)) - 2.0 * _log_cosh_arr(np.array(r0))
    log_w = -nu * np.log(np.tanh(r_t)) + 2.0 * _log_cosh_arr(r_t) - 4.0 * t
    weights = np.exp(float(log_pref) + log_w)
    mean, se = mean_stderr(weights)
    return CfEstimate(lam, complex(mean, 0.0), se, n_paths)


def cf_hh1_limit(lam, r0):
    """Limiting hyperbolic winding characteristic function (closed form)."""
    lam = _as_lam(lam)
    if r0 <= 0.0:
        raise DomainError("need r0 > 0")
    nu = _girsanov_mu(lam)
    value = math.exp(nu * math.log(math.tanh(r0))) * (
        1.0 + nu / (2.0 * math.cosh(r0) ** 2)
    )
    return CfEstimate(lam, complex(value, 0.0), 0.0)


def cosh2_moment(alpha, beta, r0, t):
    """E[cosh^2 r(t)] for the hyperbolic diffusion with drift
    alpha coth(r) + beta tanh(r): the moment solves the linear ODE
    phi' = 2 (1 + alpha + beta) phi - (1 + 2 beta)."""
    rate = 1.0 + alpha + beta
    if rate == 0.0:
        raise DomainError("1 + alpha + beta = 0 changes the solution form")
    fixed = (1.0 + 2.0 * beta) / (2.0 * rate)
    return fixed + math.exp(2.0 * rate * t) * (math.cosh(r0) ** 2 - fixed)


def _radial_norm2(x):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 0:
        return float(x) ** 2
    if x.shape == (3,):
        return float(x @ x)
    raise DomainError("point must be a radius scalar or a 3-vector")


def relativistic_cauchy_density(x, y):
    """Density of the 3-d relativistic Cauchy law with rate parameter y.

    f(x) = y e^y K_2(sqrt(|x|^2 + y^2)) / (2 pi^2 (|x|^2 + y^2)); its
    characteristic function is exp(-y (sqrt(|lam|^2 + 1) - 1)).
    """
    if y <= 0.0:
        raise DomainError("need y > 0")
    s2 = _radial_norm2(x) + y * y
    w = math.sqrt(s2)
    return math.exp(math.log(y) + y + log_bessel_k(2, w) - math.log(_TWO_PI_SQ * s2))


def _cauchy_kernel_and_dy(s2x, y):
    """G(y) = y e^y K_2(w)/(2 pi^2 w^2) at w = sqrt(s2x + y^2), and dG/dy.

    Uses d/dw [w^-2 K_2(w)] = -w^-2 K_3(w), so
    dG/dy = e^y (1 + y) K_2(w) / (2 pi^2 w^2) - y^2 e^y K_3(w) / (2 pi^2 w^3).
    """
    w = math.sqrt(s2x + y * y)
    k2 = math.exp(log_bessel_k(2, w))
    k3 = math.exp(log_bessel_k(3, w))
    ey = math.exp(y)
    g = y * ey * k2 / (_TWO_PI_SQ * w * w)
    dg = ey * (1.0 + y) * k2 / (_TWO_PI_SQ * w * w) - y * y * ey * k3 / (
        _TWO_PI_SQ * w * w * w
    )
    return g, dg


def hh1_limit_density(x, r0):
    """Density of the limiting hyperbolic winding vector at the point x.

    Writing y(u) = -ln(tanh u), the law is the relativistic Cauchy density
    at y(r0) plus (tanh(r0)/2) times its u-derivative at u = r0; since
    y'(u) = -2 / sinh(2u), the derivative term reduces to
    -(sech^2(r0)/2) * dG/dy evaluated analytically.
    """
    if r0 <= 0.0:
        raise DomainError("need r0 > 0")
    s2x = _radial_norm2(x)
    y0 = -math.log(math.tanh(r0))
    g, dg = _cauchy_kernel_and_dy(s2x, y0)
    return g - 0.5 * dg / math.cosh(r0) ** 2


def hh1_limit_density_grid(r0, rmax, n_points):
    """Tabulate the limiting hyperbolic density on [0, rmax]."""
    if rmax <= 0.0 or n_points < 3:
        raise DomainError("need rmax > 0 and at least 3 points")
    radii = np.linspace(0.0, rmax, int(n_points))
    values = np.array([hh1_limit_density(r, r0) for r in radii])
    return DensityGrid(radii, values, r0)


def _sinc(u):
    return np.sinc(np.asarray(u, dtype=np.float64) / math.pi)


def radial_cf(density, lam_norm):
    """Radial Fourier transform 4 pi int f(r) sinc(|lam| r) r^2 dr of a grid.

    Composite Simpson on the tabulated grid (uniform spacing required); the
    |lam| -> 0 limit degenerates to the total mass.
    """
    if not isinstance(density, DensityGrid):
        raise DomainError("density must be a DensityGrid")
    if lam_norm < 0.0:
        raise DomainError("need |lambda| >= 0")
    r = density.radii
    spacing = np.diff(r)
    if not np.allclose(spacing, spacing[0], rtol=1e-9, atol=0.0):
        raise DomainError("radial_cf needs a uniformly spaced grid")
    integrand = 4.0 * math.pi * density.values * _sinc(lam_norm * r) * r * r
    return float(_simpson_uniform(integrand, spacing[0]))


def radial_cf_fn(f, lam_norm, rmax, rel_tol=1e-9):
    """Radial Fourier transform of a density callable by adaptive quadrature."""
    if lam_norm < 0.0 or rmax <= 0.0:
        raise DomainError("need |lambda| >= 0 and rmax > 0")
    fv = np.vectorize(f, otypes=[np.float64])

    def integrand(r):
        return 4.0 * math.pi * fv(r) * _sinc(lam_norm * r) * r * r

    return integrate(integrand, 0.0, rmax, rel_tol=rel_tol)


def _simpson_uniform(y, h):
    n = y.size
    if n < 2:
        raise DomainError("need at least two samples")
    total = 0.0
    m = n if n % 2 == 1 else n - 1
    if m >= 3:
        total += (h / 3.0) * (
            y[0] + y[m - 1] + 4.0 * np.sum(y[1:m:2]) + 2.0 * np.sum(y[2 : m - 1 : 2])
        )
    if m != n:
        # trapezoid closure for an even point count
        total += 0.5 * h * (y[-2] + y[-1])
    return total
