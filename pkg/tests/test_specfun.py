import math

import numpy as np
import pytest
from scipy import special

from quatwind import specfun
from quatwind.errors import DomainError, QuadratureError


def series_oracle(nu, x, n_terms=30):
    """Brute-force truncated ascending series with exact term recursion."""
    term = (0.5 * x) ** nu / math.gamma(nu + 1.0)
    total = term
    for j in range(1, n_terms):
        term *= (0.25 * x * x) / (j * (j + nu))
        total += term
    return total


class TestBesselI:
    def test_zero_argument(self):
        lv = specfun.bessel_i(1.0, 0.0)
        assert lv.sign == 0 and lv.log == -math.inf and lv.value() == 0.0
        assert specfun.bessel_i(0.0, 0.0).value() == 1.0

    def test_series_oracle(self):
        nu, x = math.sqrt(2.0), 0.5
        mine = specfun.bessel_i(nu, x).value()
        ref = series_oracle(nu, x)
        assert abs(mine - ref) / ref < 1e-12

    def test_leading_asymptotics(self):
        # log I_nu(x) - (x - log(2 pi x)/2) -> 0; the gap is -(4 nu^2 - 1)/(8x)
        # to leading order, so nu = 2 needs x beyond 500 to get under 1e-3
        for nu, x, tol in ((1.0, 500.0, 1e-3), (2.0, 500.0, 4e-3), (2.0, 5000.0, 1e-3)):
            gap = specfun.log_bessel_i(nu, x) - (x - 0.5 * math.log(2.0 * math.pi * x))
            assert abs(gap) < tol
        for nu in (1.0, 2.0):
            gaps = [abs(specfun.log_bessel_i(nu, x) - (x - 0.5 * math.log(2.0 * math.pi * x)))
                    for x in (500.0, 2000.0, 8000.0)]
            assert gaps[0] > gaps[1] > gaps[2]

    def test_switchover_overlap(self):
        # both branches must agree where the asymptotic regime begins
        for nu in (0.0, 0.7, 1.0, 2.5, 4.0, 6.0):
            for x in (25.2, 26.0, 30.0):
                a = specfun._log_i_series(nu, x)
                b, ok = specfun._log_i_asymptotic(nu, x)
                assert ok
                assert abs(a - b) < 1e-10

    def test_monotone_in_x_and_nu(self):
        xs = np.linspace(0.25, 40.0, 24)
        for nu in (0.5, 1.0, 2.0, 3.5):
            vals = [specfun.log_bessel_i(nu, x) for x in xs]
            assert all(b > a for a, b in zip(vals, vals[1:]))
        for x in (0.5, 2.0, 10.0, 30.0):
            vals = [specfun.log_bessel_i(nu, x) for nu in (0.0, 0.5, 1.0, 2.0, 4.0)]
            assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_recurrence(self):
        # I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x)
        for nu in (1.0, 1.5, 2.5, 4.0):
            for x in (0.5, 2.0, 10.0, 30.0):
                lo = specfun.bessel_i(nu - 1.0, x).value()
                hi = specfun.bessel_i(nu + 1.0, x).value()
                mid = specfun.bessel_i(nu, x).value()
                lhs = lo - hi
                rhs = 2.0 * nu / x * mid
                assert abs(lhs - rhs) / abs(rhs) < 1e-8

    def test_against_scipy(self):
        for nu in (0.0, 0.5, math.sqrt(2.0), 2.0, 5.0):
            for x in (1e-3, 0.5, 5.0, 24.9, 25.1, 80.0, 900.0):
                mine = specfun.log_bessel_i(nu, x)
                ref = math.log(special.ive(nu, x)) + x
                assert abs(mine - ref) < 1e-11

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.bessel_i(-0.5, 1.0)
        with pytest.raises(DomainError):
            specfun.bessel_i(1.0, -1.0)


class TestBesselK2:
    def test_small_argument(self):
        # K_2(x) ~ (1/2) Gamma(2) (2/x)^2, so x^2 K_2(x) -> 2
        x = 1e-4
        val = x * x * specfun.bessel_k2(x).value()
        assert abs(val - 2.0) / 2.0 < 1e-6

    def test_large_argument(self):
        x = 50.0
        leading = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        val = specfun.bessel_k2(x).value()
        assert abs(val - leading) / leading < 0.05
        # next-order correction: K_2(x)/leading = 1 + 15/(8x) + 105/(2(8x)^2) + ...
        corrected = 1.0 + 15.0 / (8.0 * x) + 15.0 * 7.0 / (2.0 * (8.0 * x) ** 2)
        assert abs(val / leading - corrected) < 1e-4

    def test_three_d_integral_identity(self):
        # int_{R^3} K2(sqrt(|x|^2+y^2))/(|x|^2+y^2) dx = 2 pi^2 exp(-y)/y
        y = 1.0

        def integrand(rho):
            rho = np.atleast_1d(rho)
            out = np.empty(rho.shape)
            for i, r in enumerate(rho):
                s2 = r * r + y * y
                out[i] = math.exp(specfun.log_bessel_k(2, math.sqrt(s2))) / s2 * 4.0 * math.pi * r * r
            return out

        val = specfun.integrate(integrand, 0.0, 80.0, rel_tol=1e-9)
        ref = 2.0 * math.pi**2 * math.exp(-y) / y
        assert abs(val - ref) / ref < 1e-6

    def test_against_scipy(self):
        for x in (1e-3, 0.1, 1.0, 10.0, 120.0):
            mine = specfun.log_bessel_k(2, x)
            ref = math.log(special.kve(2, x)) - x
            assert abs(mine - ref) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.bessel_k2(0.0)


class TestIntegrate:
    def test_gaussian_moment(self):
        val = specfun.integrate(lambda r: np.exp(-0.5 * r * r) * r * r, 0.0,
                                math.inf, rel_tol=1e-12, decay_scale=2.0)
        assert abs(val - math.sqrt(0.5 * math.pi)) < 1e-10

    def test_sine(self):
        val = specfun.integrate(np.sin, 0.0, math.pi, rel_tol=1e-13)
        assert abs(val - 2.0) < 1e-12

    def test_bessel_semigroup_mass(self):
        # int_0^inf I_1(r) exp(-r^2/2) r^2 dr * exp(-1/2) = 1
        def integrand(r):
            r = np.atleast_1d(r)
            out = np.empty(r.shape)
            for i, ri in enumerate(r):
                li = specfun.log_bessel_i(1.0, ri) if ri > 0 else -math.inf
                out[i] = math.exp(li - 0.5 * ri * ri) * ri * ri if ri > 0 else 0.0
            return out

        val = specfun.integrate(integrand, 0.0, 40.0, rel_tol=1e-12) * math.exp(-0.5)
        assert abs(val - 1.0) < 1e-8
        # independent fixed-grid Simpson oracle
        grid = np.linspace(0.0, 40.0, 16001)
        y = integrand(grid)
        h = grid[1] - grid[0]
        simpson = (h / 3.0) * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())
        assert abs(val - simpson * math.exp(-0.5)) < 1e-8

    def test_linearity(self):
        gen = np.random.default_rng(10)
        for _ in range(5):
            a, b = gen.uniform(-2.0, 2.0, size=2)
            f = lambda x: np.exp(-x * x)
            g = lambda x: np.cos(x) * np.exp(-0.5 * x * x)
            combined = specfun.integrate(lambda x: a * f(x) + b * g(x), 0.0, 10.0, rel_tol=1e-11)
            parts = a * specfun.integrate(f, 0.0, 10.0, rel_tol=1e-12) + \
                b * specfun.integrate(g, 0.0, 10.0, rel_tol=1e-12)
            assert abs(combined - parts) < 1e-9 * (1.0 + abs(parts))

    def test_budget_exhaustion(self):
        with pytest.raises(QuadratureError) as err:
            specfun.integrate(lambda x: np.sin(300.0 * x), 0.0, 20.0,
                              rel_tol=1e-14, max_panels=6)
        assert err.value.estimate is not None
        assert err.value.error_bound > 0.0


class TestLogValue:
    def test_round_trip(self):
        # relative error of exp(log(x)) grows like |log x| * eps
        for x in (1.0, -2.5, 1e-200, 3e200):
            lv = specfun.LogValue.from_value(x)
            assert lv.value() == pytest.approx(x, rel=1e-13)
        zero = specfun.LogValue.from_value(0.0)
        assert zero.sign == 0 and zero.value() == 0.0
