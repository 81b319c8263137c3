import math

import numpy as np
import pytest

from quatwind import quat
from quatwind.errors import DomainError


def random_paths(seed, n_paths=50, n_points=50, offset=2.0):
    gen = np.random.default_rng(seed)
    for _ in range(n_paths):
        pts = gen.standard_normal((n_points, 4)) * 0.4
        pts[:, 0] += offset
        yield quat.SampledPath(np.linspace(0.0, 1.0, n_points), pts)


def random_unit(gen):
    u = gen.standard_normal(4)
    return u / np.linalg.norm(u)


class TestAlgebra:
    def test_norm_multiplicative(self):
        gen = np.random.default_rng(0)
        p = gen.standard_normal((10_000, 4))
        q = gen.standard_normal((10_000, 4))
        lhs = quat.norm(quat.mul(p, q))
        rhs = quat.norm(p) * quat.norm(q)
        assert np.max(np.abs(lhs - rhs) / rhs) < 1e-12

    def test_conjugation(self):
        gen = np.random.default_rng(1)
        q = gen.standard_normal((1000, 4))
        assert np.array_equal(quat.conj(quat.conj(q)), q)
        prod = quat.mul(q, quat.conj(q))
        n2 = np.sum(q * q, axis=1)
        assert np.allclose(prod[:, 0], n2, rtol=1e-12)
        assert np.max(np.abs(prod[:, 1:])) < 1e-12 * np.max(n2)

    def test_mul_units(self):
        i = quat.quaternion(0, 1, 0, 0)
        j = quat.quaternion(0, 0, 1, 0)
        k = quat.quaternion(0, 0, 0, 1)
        assert np.allclose(quat.mul(i, j), k)
        assert np.allclose(quat.mul(j, k), i)
        assert np.allclose(quat.mul(k, i), j)
        assert np.allclose(quat.mul(i, i), -quat.quaternion(1))

    def test_adjoint_is_orthogonal(self):
        gen = np.random.default_rng(2)
        for _ in range(100):
            u = random_unit(gen)
            v = gen.standard_normal(3)
            image = quat.adjoint_rotation(u, v)
            assert abs(np.linalg.norm(image) - np.linalg.norm(v)) < 1e-12


class TestPolarDecompose:
    def test_identity(self):
        r, theta = quat.polar_decompose(quat.quaternion(1))
        assert r == 1.0
        assert np.array_equal(theta, quat.quaternion(1))

    def test_pure_i_direction(self):
        r, theta = quat.polar_decompose(quat.quaternion(0, 2, 0, 0))
        assert r == 2.0
        assert np.allclose(theta, [0, 1, 0, 0])

    def test_pythagorean(self):
        q = quat.quaternion(3, 4, 0, 0)
        r, theta = quat.polar_decompose(q)
        assert abs(r - 5.0) < 1e-15
        assert np.allclose(theta, [0.6, 0.8, 0, 0], atol=1e-15)
        assert np.allclose(r * theta, q, atol=1e-12)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            quat.polar_decompose(quat.quaternion(0))


class TestWindingForm:
    def test_at_identity(self):
        dq = quat.quaternion(0, 0.3, -0.7, 0.2)
        assert np.allclose(quat.winding_form(quat.quaternion(1), dq), [0.3, -0.7, 0.2])

    def test_radial_motion_vanishes(self):
        gen = np.random.default_rng(3)
        q = gen.standard_normal((200, 4))
        eta = quat.winding_form(q, 0.37 * q)
        assert np.max(np.abs(eta)) < 1e-14

    def test_derived_component(self):
        eta = quat.winding_form(quat.quaternion(0, 1, 0, 0), quat.quaternion(1))
        assert np.allclose(eta, [-1.0, 0.0, 0.0])

    def test_matches_quaternionic_form(self):
        # dual route: component formulas against Im(conj(q) dq) / |q|^2
        gen = np.random.default_rng(4)
        q = gen.standard_normal((10_000, 4))
        dq = gen.standard_normal((10_000, 4))
        direct = quat.winding_form(q, dq)
        via_mul = quat.imag(quat.mul(quat.conj(q), dq)) / np.sum(q * q, axis=1)[:, None]
        assert np.max(np.abs(direct - via_mul)) < 1e-12

    def test_singular_at_origin(self):
        with pytest.raises(DomainError):
            quat.winding_form(quat.quaternion(0), quat.quaternion(1))


def circle_path(t, n):
    s = np.linspace(0.0, t, n + 1)
    pts = np.stack([np.cos(s), np.sin(s), np.zeros_like(s), np.zeros_like(s)], axis=1)
    return quat.SampledPath(s, pts)


class TestStratonovichWinding:
    def test_circle_path(self):
        zeta = quat.stratonovich_winding(circle_path(1.0, 2000))
        assert np.max(np.abs(zeta - [1.0, 0.0, 0.0])) < 1e-6

    def test_circle_second_order(self):
        errs = []
        for n in (200, 400, 800):
            zeta = quat.stratonovich_winding(circle_path(1.0, n))
            errs.append(np.max(np.abs(zeta - [1.0, 0.0, 0.0])))
        assert 3.5 < errs[0] / errs[1] < 4.5
        assert 3.5 < errs[1] / errs[2] < 4.5

    def test_radial_ray_vanishes(self):
        s = np.linspace(0.0, 1.0, 100)
        q0 = quat.quaternion(0.3, -1.2, 0.5, 2.0)
        path = quat.SampledPath(s, (1.0 + s)[:, None] * q0)
        assert np.max(np.abs(quat.stratonovich_winding(path))) < 1e-14

    def test_left_invariance(self):
        gen = np.random.default_rng(5)
        for path in random_paths(6, n_paths=30):
            u = random_unit(gen)
            zeta = quat.stratonovich_winding(path)
            moved = quat.SampledPath(path.times, quat.mul(u, path.points))
            assert np.max(np.abs(quat.stratonovich_winding(moved) - zeta)) < 1e-12

    def test_right_equivariance(self):
        gen = np.random.default_rng(7)
        for path in random_paths(8, n_paths=30):
            u = random_unit(gen)
            zeta = quat.stratonovich_winding(path)
            moved = quat.SampledPath(path.times, quat.mul(path.points, u))
            expected = quat.adjoint_rotation(quat.conj(u), zeta)
            assert np.max(np.abs(quat.stratonovich_winding(moved) - expected)) < 1e-12

    def test_concatenation_additive(self):
        for path in random_paths(9, n_paths=10, n_points=41):
            whole = quat.stratonovich_winding(path)
            first = quat.SampledPath(path.times[:21], path.points[:21])
            second = quat.SampledPath(path.times[20:], path.points[20:])
            parts = quat.stratonovich_winding(first) + quat.stratonovich_winding(second)
            assert np.max(np.abs(whole - parts)) < 1e-12

    def test_needs_two_points(self):
        path = quat.SampledPath(np.array([0.0]), np.array([[1.0, 0, 0, 0]]))
        with pytest.raises(DomainError):
            quat.stratonovich_winding(path)

    def test_midpoint_through_origin_rejected(self):
        path = quat.SampledPath(
            np.array([0.0, 1.0]), np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
        )
        with pytest.raises(DomainError, match="origin"):
            quat.stratonovich_winding(path)


class TestSampledPath:
    def test_validation(self):
        with pytest.raises(DomainError):
            quat.SampledPath(np.array([0.0, 0.0]), np.ones((2, 4)))
        with pytest.raises(DomainError):
            quat.SampledPath(np.array([0.0, 1.0]), np.zeros((2, 4)))
        with pytest.raises(DomainError):
            quat.SampledPath(np.array([0.0, 1.0]), np.ones((3, 4)))
