"""Monte Carlo estimators and comparison statistics.

All reductions run in path-index order with compensated summation
(`math.fsum`), so estimates are bit-stable across runs and worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "CfEstimate",
    "mean_stderr",
    "empirical_cf",
    "rao_blackwell_cf",
    "KsResult",
    "ks_two_sample",
]

# Asymptotic two-sample Kolmogorov-Smirnov coefficient at the 1% level:
# c(alpha) = sqrt(-ln(alpha / 2) / 2).
KS_COEFF_1PCT = math.sqrt(-math.log(0.005) / 2.0)


@dataclass(frozen=True)
class CfEstimate:
    """A characteristic-function value at one frequency.

    ``stderr`` is 0 for closed forms; for Monte Carlo estimates it combines
    the standard errors of the real and imaginary parts in quadrature.
    """

    lam: np.ndarray
    value: complex
    stderr: float
    n_samples: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=np.float64))
        object.__setattr__(self, "value", complex(self.value))
        if self.stderr < 0.0:
            raise DomainError("stderr must be nonnegative")


def mean_stderr(values):
    """(mean, standard error) by compensated summation in fixed order."""
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    if n == 0:
        raise DomainError("need at least one sample")
    mean = math.fsum(values.tolist()) / n
    if n == 1:
        return mean, 0.0
    dev = values - mean
    var = math.fsum((dev * dev).tolist()) / (n - 1)
    return mean, math.sqrt(var / n)


def _as_lam(lam):
    lam = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    if lam.size == 1:
        lam = np.array([lam[0], 0.0, 0.0])
    if lam.shape != (3,):
        raise DomainError("frequency must be a scalar |lambda| or a 3-vector")
    return lam


def empirical_cf(samples, lam):
    """Empirical characteristic function mean(exp(i lam . zeta))."""
    lam = _as_lam(lam)
    zeta = np.asarray(samples.zeta, dtype=np.float64)
    if zeta.ndim != 2 or zeta.shape[0] == 0:
        raise DomainError("need a nonempty sample of winding vectors")
    phase = zeta @ lam
    re, se_re = mean_stderr(np.cos(phase))
    im, se_im = mean_stderr(np.sin(phase))
    return CfEstimate(lam, complex(re, im), math.hypot(se_re, se_im), zeta.shape[0])


def rao_blackwell_cf(samples, lam):
    """Conditional estimator mean(exp(-|lam|^2 A_t / 2)) over clock samples.

    Averaging the exact conditional characteristic function given the clock
    removes the directional noise, so its variance never exceeds the
    empirical estimator's on the same samples.
    """
    lam = _as_lam(lam)
    clock = getattr(samples, "clock", None)
    if clock is None:
        raise DomainError("samples carry no clock; use the time-change route")
    clock = np.asarray(clock, dtype=np.float64)
    if clock.size == 0:
        raise DomainError("need a nonempty sample of clocks")
    lam2 = float(lam @ lam)
    mean, se = mean_stderr(np.exp(-0.5 * lam2 * clock))
    return CfEstimate(lam, complex(mean, 0.0), se, clock.size)


@dataclass(frozen=True)
class KsResult:
    statistic: float
    critical_1pct: float
    passed: bool


def ks_two_sample(a, b):
    """Two-sample Kolmogorov-Smirnov statistic with the asymptotic 1% gate."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    n, m = a.size, b.size
    if n == 0 or m == 0:
        raise DomainError("both samples must be nonempty")
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / n
    cdf_b = np.searchsorted(b, pooled, side="right") / m
    stat = float(np.max(np.abs(cdf_a - cdf_b)))
    critical = KS_COEFF_1PCT * math.sqrt((n + m) / (n * m))
    return KsResult(stat, critical, stat < critical)
