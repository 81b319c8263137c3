"""Hot numerical kernels with a numba backend and a pure-numpy fallback.

The numba path JIT-compiles per-path scalar loops and parallelises over
paths; the numpy path vectorises the same arithmetic across paths.  Both
consume pre-drawn standard-normal increments, so the simulated law is
identical either way (results agree to floating-point roundoff; within one
backend they are bit-reproducible and independent of the worker count).

Select the backend with the environment variable ``QUATWIND_BACKEND``
(``numba`` by default when importable, else ``numpy``).  The benchmark
script imports both implementations through ``IMPLEMENTATIONS``.

Kernel families
---------------
bessel4        exact-in-law 4-d Gaussian walk radius, with its 1/R^2 clock
               accumulated by the trapezoid rule
implicit       drift-implicit Euler for the scalar diffusions with drift
               (delta-1)/(2r), c*cot(2r) or a*coth(r)+b*tanh(r), plus the
               requested clock weight
direct_flat    ambient 4-d walk with midpoint-rule winding accumulation
direct_curved  Euler scheme for the inhomogeneous-coordinate SDEs on the
               projective/hyperbolic quaternionic spaces with midpoint-rule
               winding accumulation
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "IMPLEMENTATIONS",
    "KIND_BESSEL",
    "KIND_TRIG",
    "KIND_HYP",
    "CLOCK_NONE",
    "CLOCK_INV_R2",
    "CLOCK_TRIG",
    "CLOCK_HYP",
    "GEOM_HP1",
    "GEOM_HH1",
    "bessel4_endpoints",
    "bessel4_paths",
    "implicit_endpoints",
    "implicit_paths",
    "direct_flat",
    "direct_curved",
    "set_workers",
]

KIND_BESSEL = 0
KIND_TRIG = 1
KIND_HYP = 2

CLOCK_NONE = -1
CLOCK_INV_R2 = 0
CLOCK_TRIG = 1
CLOCK_HYP = 2

GEOM_HP1 = 1
GEOM_HH1 = 2

_HALF_PI = 0.5 * np.pi
_EDGE = 1e-12  # bracket inset from domain boundaries
_MID_RTOL2 = 1e-24  # squared midpoint-degeneracy threshold

_requested_backend = os.environ.get("QUATWIND_BACKEND", "").strip().lower()
if _requested_backend not in ("", "numba", "numpy"):
    raise ValueError(
        f"QUATWIND_BACKEND must be 'numba' or 'numpy', got {_requested_backend!r}"
    )

if _requested_backend == "numpy":
    _numba = None
else:
    try:
        import numba as _numba
        from numba import njit as _njit, prange as _prange
    except ImportError:
        if _requested_backend == "numba":
            raise
        _numba = None
        warnings.warn("numba unavailable; falling back to the pure-numpy backend")


# ---------------------------------------------------------------------------
# pure numpy backend
# ---------------------------------------------------------------------------


def _np_trans(kind, x):
    """The one transcendental each drift family needs: cot(2x) or tanh(x)."""
    if kind == KIND_TRIG:
        return 1.0 / np.tan(2.0 * x)
    return np.tanh(x)


def _np_drift_from_trans(kind, p1, p2, tr):
    if kind == KIND_TRIG:
        return p1 * tr
    return p1 / tr + p2 * tr


def _np_clock_weight(clock, kind, x, tr):
    """Clock integrand from the state and the drift transcendental.

    4/sin^2(2x) = 4 (1 + cot^2(2x)) and 4/sinh^2(2x) = (1 - tanh^2 x)^2
    / tanh^2 x, so no extra transcendental evaluation is needed; tanh
    saturation at large x correctly sends the hyperbolic weight to 0.
    """
    if clock == CLOCK_INV_R2:
        return 1.0 / (x * x)
    if clock == CLOCK_TRIG:
        return 4.0 * (1.0 + tr * tr)
    if clock == CLOCK_HYP:
        one_m = 1.0 - tr * tr
        return one_m * one_m / (tr * tr)
    return np.zeros_like(x)


def _np_solve_implicit(kind, p1, p2, h, target, x_prev, b_prev, tol, cap):
    """Vectorised monotone Newton/bisection solve of x - h*b(x) = target.

    Returns (x, trans_at_x, ok) where the transcendental is evaluated within
    ``tol`` of the returned root.  ``b_prev`` is the drift at ``x_prev``
    (recycled from the previous step's implicit identity) used to seed the
    explicit-Euler predictor.  For the Bessel drift the equation is
    quadratic and solved exactly.
    """
    if kind == KIND_BESSEL:
        x = 0.5 * (target + np.sqrt(target * target + 2.0 * h * (p1 - 1.0)))
        return x, x, np.ones_like(x, dtype=bool)

    lo = np.full_like(target, _EDGE)
    if kind == KIND_TRIG:
        hi = np.full_like(target, _HALF_PI - _EDGE)
    else:
        hi = np.maximum(x_prev, target) + 1.0
        for _ in range(200):
            grow = hi - h * _np_drift_from_trans(kind, p1, p2, _np_trans(kind, hi)) - target < 0.0
            if not np.any(grow):
                break
            hi = np.where(grow, 2.0 * hi, hi)

    x = np.clip(target + h * b_prev, lo + _EDGE, hi - _EDGE)
    tr_out = np.empty_like(x)
    done = np.zeros_like(target, dtype=bool)
    for _ in range(cap):
        tr = _np_trans(kind, x)
        tr_out = np.where(done, tr_out, tr)
        if kind == KIND_TRIG:
            g = x - h * p1 * tr - target
            gp = 1.0 + 2.0 * h * p1 * (1.0 + tr * tr)
        else:
            tr2 = tr * tr
            g = x - h * (p1 / tr + p2 * tr) - target
            gp = 1.0 + h * (p1 * (1.0 - tr2) / tr2 - p2 * (1.0 - tr2))
        pos = g > 0.0
        hi = np.where(~done & pos, x, hi)
        lo = np.where(~done & ~pos, x, lo)
        step = g / gp
        converged = np.abs(step) < tol  # accept a tiny Newton step outright
        xn = x - step
        inside = converged | ((xn > lo) & (xn < hi))
        xn = np.where(inside, xn, 0.5 * (lo + hi))
        step_done = converged | (np.abs(xn - x) < tol) | (hi - lo < tol)
        x = np.where(done, x, xn)
        done = done | step_done
        if np.all(done):
            break
    return x, tr_out, done


def _np_implicit(kind, p1, p2, r0, dt, dz, clock, tol, cap, store):
    n_paths, n = dz.shape
    x = np.full(n_paths, r0)
    a = np.zeros(n_paths)
    fail_step = np.full(n_paths, -1, dtype=np.int64)
    fail_state = np.full(n_paths, np.nan)
    tr0 = _np_trans(kind, x)
    b = _np_drift_from_trans(kind, p1, p2, tr0)
    w_prev = _np_clock_weight(clock, kind, x, tr0)
    if store:
        rpath = np.empty((n_paths, n + 1))
        apath = np.empty((n_paths, n + 1))
        rpath[:, 0] = x
        apath[:, 0] = 0.0
    else:
        rpath = apath = None
    alive = np.ones(n_paths, dtype=bool)
    for i in range(n):
        h = dt[i]
        target = x + math.sqrt(h) * dz[:, i]
        xn, tr, ok = _np_solve_implicit(kind, p1, p2, h, target, x, b, tol, cap)
        newly_dead = alive & ~ok
        if np.any(newly_dead):
            fail_step[newly_dead] = i
            fail_state[newly_dead] = x[newly_dead]
            alive &= ok
        w_new = _np_clock_weight(clock, kind, xn, tr)
        a = np.where(alive, a + 0.5 * h * (w_prev + w_new), a)
        x = np.where(alive, xn, x)
        b = np.where(alive, (xn - target) / h, b)
        w_prev = np.where(alive, w_new, w_prev)
        if store:
            rpath[:, i + 1] = x
            apath[:, i + 1] = a
    return x, a, fail_step, fail_state, rpath, apath


def _np_bessel4(r0, dt, dw, store):
    n_paths, n, _ = dw.shape
    coords = np.zeros((n_paths, 4))
    coords[:, 0] = r0
    a = np.zeros(n_paths)
    w_prev = np.full(n_paths, 1.0 / (r0 * r0))
    r2 = np.full(n_paths, r0 * r0)
    if store:
        rpath = np.empty((n_paths, n + 1))
        apath = np.empty((n_paths, n + 1))
        rpath[:, 0] = r0
        apath[:, 0] = 0.0
    else:
        rpath = apath = None
    for i in range(n):
        coords += math.sqrt(dt[i]) * dw[:, i, :]
        r2 = np.sum(coords * coords, axis=1)
        w = 1.0 / r2
        a += 0.5 * dt[i] * (w_prev + w)
        w_prev = w
        if store:
            rpath[:, i + 1] = np.sqrt(r2)
            apath[:, i + 1] = a
    return np.sqrt(r2), a, rpath, apath


def _np_imag_conj_mul(m, d):
    """Components of Im(conj(m) d) for (n, 4) arrays."""
    mt, mx, my, mz = m[:, 0], m[:, 1], m[:, 2], m[:, 3]
    dt_, dx, dy, dz = d[:, 0], d[:, 1], d[:, 2], d[:, 3]
    return (
        mt * dx - mx * dt_ + mz * dy - my * dz,
        mt * dy - my * dt_ + mx * dz - mz * dx,
        mt * dz - mz * dt_ + my * dx - mx * dy,
    )


def _np_direct_flat(q0, dt, dw):
    n_paths, n, _ = dw.shape
    q = np.tile(q0, (n_paths, 1))
    zeta = np.zeros((n_paths, 3))
    fail_step = np.full(n_paths, -1, dtype=np.int64)
    alive = np.ones(n_paths, dtype=bool)
    for i in range(n):
        d = math.sqrt(dt[i]) * dw[:, i, :]
        qn = q + d
        m = q + 0.5 * d
        n2m = np.sum(m * m, axis=1)
        scale = np.maximum(np.sum(q * q, axis=1), np.sum(qn * qn, axis=1))
        bad = alive & (n2m < _MID_RTOL2 * scale)
        if np.any(bad):
            fail_step[bad] = i
            alive &= ~bad
        i1, i2, i3 = _np_imag_conj_mul(m, d)
        upd = np.where(alive, 1.0, 0.0) / np.where(n2m > 0.0, n2m, 1.0)
        zeta[:, 0] += i1 * upd
        zeta[:, 1] += i2 * upd
        zeta[:, 2] += i3 * upd
        q = np.where(alive[:, None], qn, q)
    return zeta, fail_step


def _np_direct_curved(geom, w0, dt, dw):
    n_paths, n, _ = dw.shape
    w = np.tile(w0, (n_paths, 1))
    zeta = np.zeros((n_paths, 3))
    fail_step = np.full(n_paths, -1, dtype=np.int64)
    fail_state = np.full(n_paths, np.nan)
    alive = np.ones(n_paths, dtype=bool)
    sign = -1.0 if geom == GEOM_HP1 else 1.0
    for i in range(n):
        h = dt[i]
        d = math.sqrt(h) * dw[:, i, :]
        u2 = np.sum(w * w, axis=1)
        s2 = 1.0 + u2 if geom == GEOM_HP1 else 1.0 - u2
        wn = w + s2[:, None] * d + (2.0 * sign * h) * s2[:, None] * w
        u2n = np.sum(wn * wn, axis=1)
        if geom == GEOM_HH1:
            bad = u2n >= 1.0
        else:
            bad = ~np.isfinite(u2n)
        m = 0.5 * (w + wn)
        n2m = np.sum(m * m, axis=1)
        bad |= n2m < _MID_RTOL2 * np.maximum(u2, u2n)
        newly_dead = alive & bad
        if np.any(newly_dead):
            fail_step[newly_dead] = i
            fail_state[newly_dead] = np.sqrt(u2[newly_dead])
            alive &= ~bad
        if geom == GEOM_HP1:
            factor = (1.0 + n2m) / np.where(n2m > 0.0, n2m, 1.0)
        else:
            factor = (1.0 - n2m) / np.where(n2m > 0.0, n2m, 1.0)
        i1, i2, i3 = _np_imag_conj_mul(m, d)
        upd = np.where(alive, factor, 0.0)
        zeta[:, 0] += i1 * upd
        zeta[:, 1] += i2 * upd
        zeta[:, 2] += i3 * upd
        w = np.where(alive[:, None], wn, w)
    return zeta, fail_step, fail_state


_NUMPY_IMPL = {
    "bessel4": _np_bessel4,
    "implicit": _np_implicit,
    "direct_flat": _np_direct_flat,
    "direct_curved": _np_direct_curved,
}


# ---------------------------------------------------------------------------
# numba backend (scalar per-path loops, parallel over paths)
# ---------------------------------------------------------------------------

if _numba is not None:

    @_njit(cache=True, error_model="numpy")
    def _nb_trans(kind, x):
        if kind == KIND_TRIG:
            return 1.0 / math.tan(2.0 * x)
        return math.tanh(x)

    @_njit(cache=True, error_model="numpy")
    def _nb_drift_from_trans(kind, p1, p2, tr):
        if kind == KIND_TRIG:
            return p1 * tr
        return p1 / tr + p2 * tr

    @_njit(cache=True, error_model="numpy")
    def _nb_clock_weight(clock, kind, x, tr):
        # 4/sin^2(2x) = 4 (1 + cot^2(2x)); 4/sinh^2(2x) = (1 - tanh^2 x)^2 / tanh^2 x
        if clock == CLOCK_INV_R2:
            return 1.0 / (x * x)
        if clock == CLOCK_TRIG:
            return 4.0 * (1.0 + tr * tr)
        if clock == CLOCK_HYP:
            one_m = 1.0 - tr * tr
            return one_m * one_m / (tr * tr)
        return 0.0

    @_njit(cache=True, error_model="numpy")
    def _nb_solve_implicit(kind, p1, p2, h, target, x_prev, b_prev, tol, cap):
        if kind == KIND_BESSEL:
            x = 0.5 * (target + math.sqrt(target * target + 2.0 * h * (p1 - 1.0)))
            return x, x, True

        lo = _EDGE
        if kind == KIND_TRIG:
            hi = _HALF_PI - _EDGE
        else:
            hi = max(x_prev, target) + 1.0
            it = 0
            while hi - h * _nb_drift_from_trans(kind, p1, p2, _nb_trans(kind, hi)) - target < 0.0 and it < 200:
                hi = 2.0 * hi
                it += 1

        x = target + h * b_prev
        if x <= lo + _EDGE:
            x = lo + _EDGE
        elif x >= hi - _EDGE:
            x = hi - _EDGE
        tr = 0.0
        for _ in range(cap):
            tr = _nb_trans(kind, x)
            if kind == KIND_TRIG:
                g = x - h * p1 * tr - target
                gp = 1.0 + 2.0 * h * p1 * (1.0 + tr * tr)
            else:
                tr2 = tr * tr
                g = x - h * (p1 / tr + p2 * tr) - target
                gp = 1.0 + h * (p1 * (1.0 - tr2) / tr2 - p2 * (1.0 - tr2))
            if g > 0.0:
                hi = x
            else:
                lo = x
            step = g / gp
            xn = x - step
            if abs(step) < tol:  # accept a tiny Newton step outright
                return xn, tr, True
            if not (lo < xn < hi):
                xn = 0.5 * (lo + hi)
            if abs(xn - x) < tol or hi - lo < tol:
                return xn, tr, True
            x = xn
        return x, tr, False

    @_njit(parallel=True, cache=True, error_model="numpy")
    def _nb_implicit(kind, p1, p2, r0, dt, dz, clock, tol, cap, store):
        n_paths, n = dz.shape
        rT = np.empty(n_paths)
        aT = np.empty(n_paths)
        fail_step = np.full(n_paths, -1, dtype=np.int64)
        fail_state = np.full(n_paths, np.nan)
        rows = n_paths if store else 1
        cols = n + 1 if store else 1
        rpath = np.zeros((rows, cols))
        apath = np.zeros((rows, cols))
        for b in _prange(n_paths):
            x = r0
            a = 0.0
            tr = _nb_trans(kind, x)
            bdrift = _nb_drift_from_trans(kind, p1, p2, tr)
            w_prev = _nb_clock_weight(clock, kind, x, tr)
            if store:
                rpath[b, 0] = x
                apath[b, 0] = 0.0
            for i in range(n):
                h = dt[i]
                target = x + math.sqrt(h) * dz[b, i]
                xn, trn, ok = _nb_solve_implicit(kind, p1, p2, h, target, x, bdrift, tol, cap)
                if not ok:
                    fail_step[b] = i
                    fail_state[b] = x
                    break
                w_new = _nb_clock_weight(clock, kind, xn, trn)
                a += 0.5 * h * (w_prev + w_new)
                w_prev = w_new
                bdrift = (xn - target) / h
                x = xn
                if store:
                    rpath[b, i + 1] = x
                    apath[b, i + 1] = a
            rT[b] = x
            aT[b] = a
        return rT, aT, fail_step, fail_state, rpath, apath

    @_njit(parallel=True, cache=True, error_model="numpy")
    def _nb_bessel4(r0, dt, dw, store):
        n_paths = dw.shape[0]
        n = dw.shape[1]
        rT = np.empty(n_paths)
        aT = np.empty(n_paths)
        rows = n_paths if store else 1
        cols = n + 1 if store else 1
        rpath = np.zeros((rows, cols))
        apath = np.zeros((rows, cols))
        for b in _prange(n_paths):
            c0 = r0
            c1 = 0.0
            c2 = 0.0
            c3 = 0.0
            a = 0.0
            w_prev = 1.0 / (r0 * r0)
            r2 = r0 * r0
            if store:
                rpath[b, 0] = r0
                apath[b, 0] = 0.0
            for i in range(n):
                s = math.sqrt(dt[i])
                c0 += s * dw[b, i, 0]
                c1 += s * dw[b, i, 1]
                c2 += s * dw[b, i, 2]
                c3 += s * dw[b, i, 3]
                r2 = c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3
                w = 1.0 / r2
                a += 0.5 * dt[i] * (w_prev + w)
                w_prev = w
                if store:
                    rpath[b, i + 1] = math.sqrt(r2)
                    apath[b, i + 1] = a
            rT[b] = math.sqrt(r2)
            aT[b] = a
        return rT, aT, rpath, apath

    @_njit(parallel=True, cache=True, error_model="numpy")
    def _nb_direct_flat(q0, dt, dw):
        n_paths = dw.shape[0]
        n = dw.shape[1]
        zeta = np.zeros((n_paths, 3))
        fail_step = np.full(n_paths, -1, dtype=np.int64)
        for b in _prange(n_paths):
            qt = q0[0]
            qx = q0[1]
            qy = q0[2]
            qz = q0[3]
            z1 = 0.0
            z2 = 0.0
            z3 = 0.0
            for i in range(n):
                s = math.sqrt(dt[i])
                d0 = s * dw[b, i, 0]
                d1 = s * dw[b, i, 1]
                d2 = s * dw[b, i, 2]
                d3 = s * dw[b, i, 3]
                mt = qt + 0.5 * d0
                mx = qx + 0.5 * d1
                my = qy + 0.5 * d2
                mz = qz + 0.5 * d3
                n2m = mt * mt + mx * mx + my * my + mz * mz
                q2 = qt * qt + qx * qx + qy * qy + qz * qz
                qt += d0
                qx += d1
                qy += d2
                qz += d3
                q2n = qt * qt + qx * qx + qy * qy + qz * qz
                hi2 = q2 if q2 > q2n else q2n
                if n2m < _MID_RTOL2 * hi2:
                    fail_step[b] = i
                    break
                z1 += (mt * d1 - mx * d0 + mz * d2 - my * d3) / n2m
                z2 += (mt * d2 - my * d0 + mx * d3 - mz * d1) / n2m
                z3 += (mt * d3 - mz * d0 + my * d1 - mx * d2) / n2m
            zeta[b, 0] = z1
            zeta[b, 1] = z2
            zeta[b, 2] = z3
        return zeta, fail_step

    @_njit(parallel=True, cache=True, error_model="numpy")
    def _nb_direct_curved(geom, w0, dt, dw):
        n_paths = dw.shape[0]
        n = dw.shape[1]
        zeta = np.zeros((n_paths, 3))
        fail_step = np.full(n_paths, -1, dtype=np.int64)
        fail_state = np.full(n_paths, np.nan)
        sign = -1.0 if geom == GEOM_HP1 else 1.0
        for b in _prange(n_paths):
            wt = w0[0]
            wx = w0[1]
            wy = w0[2]
            wz = w0[3]
            z1 = 0.0
            z2 = 0.0
            z3 = 0.0
            for i in range(n):
                h = dt[i]
                s = math.sqrt(h)
                d0 = s * dw[b, i, 0]
                d1 = s * dw[b, i, 1]
                d2 = s * dw[b, i, 2]
                d3 = s * dw[b, i, 3]
                u2 = wt * wt + wx * wx + wy * wy + wz * wz
                if geom == GEOM_HP1:
                    s2 = 1.0 + u2
                else:
                    s2 = 1.0 - u2
                f = 2.0 * sign * h * s2
                nt = wt + s2 * d0 + f * wt
                nx = wx + s2 * d1 + f * wx
                ny = wy + s2 * d2 + f * wy
                nz = wz + s2 * d3 + f * wz
                u2n = nt * nt + nx * nx + ny * ny + nz * nz
                if geom == GEOM_HH1:
                    bad = u2n >= 1.0
                else:
                    bad = not math.isfinite(u2n)
                mt = 0.5 * (wt + nt)
                mx = 0.5 * (wx + nx)
                my = 0.5 * (wy + ny)
                mz = 0.5 * (wz + nz)
                n2m = mt * mt + mx * mx + my * my + mz * mz
                hi2 = u2 if u2 > u2n else u2n
                if bad or n2m < _MID_RTOL2 * hi2:
                    fail_step[b] = i
                    fail_state[b] = math.sqrt(u2)
                    break
                if geom == GEOM_HP1:
                    factor = (1.0 + n2m) / n2m
                else:
                    factor = (1.0 - n2m) / n2m
                z1 += (mt * d1 - mx * d0 + mz * d2 - my * d3) * factor
                z2 += (mt * d2 - my * d0 + mx * d3 - mz * d1) * factor
                z3 += (mt * d3 - mz * d0 + my * d1 - mx * d2) * factor
                wt = nt
                wx = nx
                wy = ny
                wz = nz
            zeta[b, 0] = z1
            zeta[b, 1] = z2
            zeta[b, 2] = z3
        return zeta, fail_step, fail_state

    _NUMBA_IMPL = {
        "bessel4": _nb_bessel4,
        "implicit": _nb_implicit,
        "direct_flat": _nb_direct_flat,
        "direct_curved": _nb_direct_curved,
    }


ACTIVE_BACKEND = "numba" if _numba is not None else "numpy"

IMPLEMENTATIONS = {"numpy": _NUMPY_IMPL}
if _numba is not None:
    IMPLEMENTATIONS["numba"] = _NUMBA_IMPL

_active = IMPLEMENTATIONS[ACTIVE_BACKEND]


def set_workers(n):
    """Set the parallel worker count; returns the effective value.

    Only meaningful for the numba backend (the numpy backend is vectorised
    and ignores it).  Results never depend on this setting.
    """
    n = max(1, int(n))
    if ACTIVE_BACKEND != "numba":
        return 1
    effective = min(n, _numba.config.NUMBA_NUM_THREADS)
    _numba.set_num_threads(effective)
    return effective


def _as_farray(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def bessel4_endpoints(r0, dt, dw):
    """(R_T, A_T) per path for the exact dimension-4 radial walk."""
    rT, aT, _, _ = _active["bessel4"](float(r0), _as_farray(dt), _as_farray(dw), False)
    return rT, aT


def bessel4_paths(r0, dt, dw):
    """Full (R, A) grids per path; memory scales with n_paths * n_steps."""
    return _active["bessel4"](float(r0), _as_farray(dt), _as_farray(dw), True)


def implicit_endpoints(kind, p1, p2, r0, dt, dz, clock, tol=1e-12, cap=200):
    rT, aT, fail_step, fail_state, _, _ = _active["implicit"](
        int(kind), float(p1), float(p2), float(r0), _as_farray(dt), _as_farray(dz),
        int(clock), float(tol), int(cap), False,
    )
    return rT, aT, fail_step, fail_state


def implicit_paths(kind, p1, p2, r0, dt, dz, clock, tol=1e-12, cap=200):
    return _active["implicit"](
        int(kind), float(p1), float(p2), float(r0), _as_farray(dt), _as_farray(dz),
        int(clock), float(tol), int(cap), True,
    )


def direct_flat(q0, dt, dw):
    return _active["direct_flat"](_as_farray(q0), _as_farray(dt), _as_farray(dw))


def direct_curved(geom, w0, dt, dw):
    return _active["direct_curved"](int(geom), _as_farray(w0), _as_farray(dt), _as_farray(dw))
