"""Run configuration, acceptance comparisons and report generation.

``run_verify`` executes every comparison applicable to the configured
geometry and produces a Report whose rows each name the two operands, the
tolerance rule applied, the measured and reference values, and a pass flag.
For a fixed configuration (including the master seed) the report is
byte-identical across runs and worker counts apart from the wall_time
fields.

Two rows are expected to fail by design; they are kept as stated rather
than recalibrated.  The library's cross-validated measurements give

* flat long-horizon scaling: the characteristic function at frequency
  2*lam/sqrt(log t) tends to exp(-|lam|^2) (clock average A_t/log t -> 1/2),
  while the configured reference is exp(-|lam|^2/2);
* projective sqrt(t) scaling: the characteristic function of zeta(t)/sqrt(t)
  tends to exp(-3|lam|^2) (clock average A_t/t -> 6), while the configured
  reference is exp(-|lam|^2).

Both measured limits are verified independently (exact quadrature on the
flat side; two simulation routes plus the finite-time identity on the
projective side), so the failures are reported honestly instead of being
tuned away.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels, laws, quat, radial, rng, stats, winding
from .errors import ConfigError, StepFailureError

__all__ = ["RunConfig", "Report", "run_verify", "write_report", "strip_wall_times"]

MIN_PATHS = 100

_GEOMETRIES = ("flat", "hp1", "hh1")
_DEFAULT_RADII = {"flat": 1.0, "hp1": 0.25 * math.pi, "hh1": 1.0}
_ROUTES = ("timechange", "direct", "girsanov")


@dataclass
class RunConfig:
    """Verification/simulation run configuration.

    JSON configuration files mirror these field names exactly; unknown keys
    are rejected.
    """

    geometry: str = "all"
    horizon: float = 1.0
    start_radius: float | None = None
    n_paths: int = 100_000
    step: dict = field(default_factory=lambda: radial.StepPolicy().to_dict())
    frequency_grid: list = field(default_factory=lambda: [0.5, 1.0, 2.0])
    master_seed: int = 20260809
    output_path: str | None = None
    routes: list = field(default_factory=lambda: list(_ROUTES))
    rng: str = rng.GENERATOR_NAME
    workers: int = 1

    def __post_init__(self):
        if self.geometry not in _GEOMETRIES + ("all",):
            raise ConfigError(f"geometry must be one of {_GEOMETRIES + ('all',)}")
        if self.n_paths < 1:
            raise ConfigError("n_paths must be at least 1")
        if not self.frequency_grid:
            raise ConfigError("frequency_grid must be nonempty")
        if self.horizon <= 0.0:
            raise ConfigError("horizon must be positive")
        if self.rng != rng.GENERATOR_NAME:
            raise ConfigError(f"unsupported rng {self.rng!r}; only {rng.GENERATOR_NAME!r}")
        if not set(self.routes) <= set(_ROUTES) or not self.routes:
            raise ConfigError(f"routes must be a nonempty subset of {_ROUTES}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ConfigError("master_seed must fit in an unsigned 64-bit integer")
        if self.start_radius is not None and self.start_radius <= 0.0:
            raise ConfigError("start_radius must be positive")
        radial.StepPolicy.from_dict(self.step)  # validates

    def radius_for(self, geometry):
        return self.start_radius if self.start_radius is not None else _DEFAULT_RADII[geometry]

    def policy(self):
        return radial.StepPolicy.from_dict(self.step)

    def to_dict(self):
        return {
            "geometry": self.geometry,
            "horizon": self.horizon,
            "start_radius": self.start_radius,
            "n_paths": self.n_paths,
            "step": dict(self.step),
            "frequency_grid": list(self.frequency_grid),
            "master_seed": int(self.master_seed),
            "output_path": self.output_path,
            "routes": list(self.routes),
            "rng": self.rng,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, data):
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class Report:
    config: dict
    backend: str
    generator: str
    rows: list
    summary: dict

    def to_dict(self):
        return {
            "config": self.config,
            "backend": self.backend,
            "generator": self.generator,
            "rows": self.rows,
            "summary": self.summary,
        }

    @property
    def all_passed(self):
        return self.summary["failed"] == 0


def _row(name, criterion, estimator, *, lam=None, value=0.0, stderr=0.0,
         reference=0.0, tolerance=0.0, rule="", n_paths=0, started=None,
         note="", passed=None):
    value = complex(value)
    reference = complex(reference)
    if passed is None:
        passed = abs(value - reference) <= tolerance
    return {
        "name": name,
        "criterion": criterion,
        "lambda": None if lam is None else [float(v) for v in stats._as_lam(lam)],
        "estimator": estimator,
        "value_re": value.real,
        "value_im": value.imag,
        "stderr": float(stderr),
        "reference_re": reference.real,
        "reference_im": reference.imag,
        "tolerance": float(tolerance),
        "tolerance_rule": rule,
        "pass": bool(passed) if passed is not None else None,
        "n_paths": int(n_paths),
        "wall_time": 0.0 if started is None else time.perf_counter() - started,
        "note": note,
    }


def _skip_row(name, criterion, estimator, note):
    row = _row(name, criterion, estimator, passed=True, note=note)
    row["pass"] = None
    return row


def _insufficient(config, needed=MIN_PATHS):
    return config.n_paths < needed


# ---------------------------------------------------------------------------
# criterion runners
# ---------------------------------------------------------------------------


def _run_c1(config):
    """Flat exact CF vs Rao-Blackwell time-change estimator."""
    rows = []
    t0 = time.perf_counter()
    exact0 = laws.cf_flat_exact(0.0, 1.0, 1.0)
    rows.append(_row(
        "flat_exact_cf_lam0", "1", "cf_flat_exact(0,1,1) vs 1",
        lam=0.0, value=exact0.value, reference=1.0, tolerance=1e-8,
        rule="abs diff <= 1e-8", started=t0,
    ))
    if _insufficient(config):
        rows.append(_skip_row("flat_rb_vs_exact", "1",
                              "rao_blackwell_cf vs cf_flat_exact", "insufficient samples"))
        return rows
    if "timechange" not in config.routes:
        rows.append(_skip_row("flat_rb_vs_exact", "1",
                              "rao_blackwell_cf vs cf_flat_exact", "timechange route disabled"))
        return rows
    n = config.n_paths
    t0 = time.perf_counter()
    samples = winding.simulate_timechange(
        winding.Geometry("flat", 1.0), 1.0, n, config.master_seed,
        substream=110, policy=radial.StepPolicy(h=5e-4),
    )
    for i, lam in enumerate((0.5, 1.0, 2.0)):
        started = t0 if i == 0 else time.perf_counter()
        rb = stats.rao_blackwell_cf(samples, lam)
        exact = laws.cf_flat_exact(lam, 1.0, 1.0)
        rows.append(_row(
            f"flat_rb_vs_exact_lam{lam:g}", "1",
            "rao_blackwell_cf(timechange) vs cf_flat_exact",
            lam=lam, value=rb.value, stderr=rb.stderr, reference=exact.value,
            tolerance=3.0 * rb.stderr, rule="abs diff <= 3*stderr",
            n_paths=n, started=started,
        ))
    return rows


def _run_c2(config):
    """Flat Girsanov identity estimator vs exact quadrature."""
    if _insufficient(config):
        return [_skip_row("flat_girsanov_vs_exact", "2",
                          "cf_flat_girsanov vs cf_flat_exact", "insufficient samples")]
    if "girsanov" not in config.routes:
        return [_skip_row("flat_girsanov_vs_exact", "2",
                          "cf_flat_girsanov vs cf_flat_exact", "girsanov route disabled")]
    rows = []
    n = config.n_paths
    policy = radial.StepPolicy(h=5e-4)
    for i, lam in enumerate((0.5, 1.0, 2.0)):
        t0 = time.perf_counter()
        est = laws.cf_flat_girsanov(lam, 1.0, 1.0, n, config.master_seed,
                                    substream=120 + i, policy=policy)
        exact = laws.cf_flat_exact(lam, 1.0, 1.0)
        rows.append(_row(
            f"flat_girsanov_vs_exact_lam{lam:g}", "2",
            "cf_flat_girsanov (tilted Bessel) vs cf_flat_exact",
            lam=lam, value=est.value, stderr=est.stderr, reference=exact.value,
            tolerance=3.0 * est.stderr, rule="abs diff <= 3*stderr",
            n_paths=n, started=t0,
        ))
    return rows


def _run_c3(config):
    """Flat long-horizon scaling of the exact CF (quadrature only)."""
    rows = []
    t0 = time.perf_counter()
    ladder = (1e4, 1e6, 1e8)
    target = math.exp(-0.5)
    values = {}
    for t in ladder:
        freq = 2.0 / math.sqrt(math.log(t))
        values[t] = laws.cf_flat_exact(freq, t, 1.0).value.real
    discrepancies = [abs(values[t] - target) for t in ladder]
    rows.append(_row(
        "flat_loglimit_proximity_t1e8", "3",
        "cf_flat_exact at 2*lam/sqrt(log t) vs exp(-|lam|^2/2)",
        lam=1.0, value=values[1e8], reference=target, tolerance=0.05,
        rule="abs diff <= 0.05", started=t0,
        note=(f"measured limit is exp(-|lam|^2) = {math.exp(-1.0):.6f}; "
              "see module docstring"),
    ))
    rows.append(_row(
        "flat_loglimit_monotone_decrease", "3",
        "discrepancy decreasing over t in {1e4, 1e6, 1e8}",
        lam=1.0, value=discrepancies[-1], reference=discrepancies[-1],
        tolerance=0.0, rule="d(1e4) > d(1e6) > d(1e8)",
        passed=discrepancies[0] > discrepancies[1] > discrepancies[2],
        started=t0,
        note="discrepancies " + ", ".join(f"{d:.6f}" for d in discrepancies),
    ))
    return rows


def _ks_rows(config, geometry):
    """Two-route distributional equivalence for one geometry."""
    name = f"two_route_ks_{geometry}"
    estimator = "simulate_direct vs simulate_timechange (per-component KS)"
    if _insufficient(config):
        return [_skip_row(name, "4", estimator, "insufficient samples")]
    if not {"timechange", "direct"} <= set(config.routes):
        return [_skip_row(name, "4", estimator, "needs both routes enabled")]
    n = min(config.n_paths, 10_000)
    r0 = _DEFAULT_RADII[geometry]
    geom = winding.Geometry(geometry, r0)
    base = {"flat": 140, "hp1": 142, "hh1": 144}[geometry]
    t0 = time.perf_counter()
    tc = winding.simulate_timechange(geom, 1.0, n, config.master_seed,
                                     substream=base, policy=radial.StepPolicy(h=1e-3))
    step = 5e-4 if geometry != "flat" else 1e-3
    direct = winding.simulate_direct(geom, 1.0, step, n, config.master_seed,
                                     substream=base + 1, on_failure="drop")
    rows = []
    note = f"direct route dropped {direct.n_failed} path(s)" if direct.n_failed else ""
    for comp in range(3):
        ks = stats.ks_two_sample(direct.zeta[:, comp], tc.zeta[:, comp])
        rows.append(_row(
            f"{name}_comp{comp + 1}", "4", estimator,
            value=ks.statistic, reference=0.0, tolerance=ks.critical_1pct,
            rule="KS statistic below 1% critical value",
            n_paths=n, started=t0, note=note,
            passed=ks.passed,
        ))
    return rows


def _run_c5(config):
    """Projective Girsanov identity vs time-change estimator."""
    if _insufficient(config):
        return [_skip_row("hp1_identity_vs_timechange", "5",
                          "cf_hp1_identity vs rao_blackwell_cf", "insufficient samples")]
    needed = {"timechange", "girsanov"}
    if not needed <= set(config.routes):
        return [_skip_row("hp1_identity_vs_timechange", "5",
                          "cf_hp1_identity vs rao_blackwell_cf", "needs both routes enabled")]
    n = min(config.n_paths, 40_000)
    r0 = 0.25 * math.pi
    policy = radial.StepPolicy(h=5e-4)
    t0 = time.perf_counter()
    samples = winding.simulate_timechange(winding.Geometry("hp1", r0), 1.0, n,
                                          config.master_seed, substream=150,
                                          policy=policy)
    rows = []
    for i, lam in enumerate((0.5, 1.0, 2.0)):
        started = time.perf_counter()
        rb = stats.rao_blackwell_cf(samples, lam)
        ident = laws.cf_hp1_identity(lam, 1.0, r0, n, config.master_seed,
                                     substream=151 + i, policy=policy)
        combined = math.hypot(rb.stderr, ident.stderr)
        rows.append(_row(
            f"hp1_identity_vs_timechange_lam{lam:g}", "5",
            "cf_hp1_identity (tilted Jacobi) vs rao_blackwell_cf(timechange)",
            lam=lam, value=ident.value, stderr=combined, reference=rb.value,
            tolerance=3.0 * combined, rule="abs diff <= 3*combined stderr",
            n_paths=n, started=t0 if i == 0 else started,
        ))
    return rows


def _run_c6(config):
    """Projective sqrt(t) scaling at t = 50."""
    if _insufficient(config):
        return [_skip_row("hp1_sqrt_t_limit_t50", "6",
                          "rao_blackwell_cf scaled vs exp(-|lam|^2)", "insufficient samples")]
    if "timechange" not in config.routes:
        return [_skip_row("hp1_sqrt_t_limit_t50", "6",
                          "rao_blackwell_cf scaled vs exp(-|lam|^2)", "timechange route disabled")]
    n = min(config.n_paths, 10_000)
    t = 50.0
    t0 = time.perf_counter()
    samples = winding.simulate_timechange(
        winding.Geometry("hp1", 0.25 * math.pi), t, n, config.master_seed,
        substream=160, policy=radial.StepPolicy(h=5e-3),
    )
    rb = stats.rao_blackwell_cf(samples, 1.0 / math.sqrt(t))
    target = math.exp(-1.0)
    return [_row(
        "hp1_sqrt_t_limit_t50", "6",
        "rao_blackwell_cf of zeta(t)/sqrt(t) vs exp(-|lam|^2)",
        lam=1.0, value=rb.value, stderr=rb.stderr, reference=target,
        tolerance=0.05, rule="abs diff <= 0.05", n_paths=n, started=t0,
        note=(f"measured limit is exp(-3|lam|^2) = {math.exp(-3.0):.6f}; "
              "see module docstring"),
    )]


def _run_c7(config):
    """Hyperbolic finite-time identity and long-time limit."""
    est_a = "cf_hh1_identity (tilted hyperbolic Jacobi) vs rao_blackwell_cf"
    est_b = "rao_blackwell_cf(t=5) vs cf_hh1_limit"
    if _insufficient(config):
        return [_skip_row("hh1_identity_vs_timechange_t1", "7", est_a, "insufficient samples"),
                _skip_row("hh1_timechange_vs_limit_t5", "7", est_b, "insufficient samples")]
    needed = {"timechange", "girsanov"}
    if not needed <= set(config.routes):
        return [_skip_row("hh1_identity_vs_timechange_t1", "7", est_a, "needs both routes enabled"),
                _skip_row("hh1_timechange_vs_limit_t5", "7", est_b, "needs both routes enabled")]
    rows = []
    lam = 1.0
    n1 = min(config.n_paths, 50_000)
    policy = radial.StepPolicy(h=5e-4)
    t0 = time.perf_counter()
    samples = winding.simulate_timechange(winding.Geometry("hh1", 1.0), 1.0, n1,
                                          config.master_seed, substream=170,
                                          policy=policy)
    rb = stats.rao_blackwell_cf(samples, lam)
    ident = laws.cf_hh1_identity(lam, 1.0, 1.0, n1, config.master_seed,
                                 substream=171, policy=policy)
    combined = math.hypot(rb.stderr, ident.stderr)
    rows.append(_row(
        "hh1_identity_vs_timechange_t1", "7", est_a,
        lam=lam, value=ident.value, stderr=combined, reference=rb.value,
        tolerance=3.0 * combined, rule="abs diff <= 3*combined stderr",
        n_paths=n1, started=t0,
    ))
    n2 = min(config.n_paths, 20_000)
    t0 = time.perf_counter()
    samples5 = winding.simulate_timechange(winding.Geometry("hh1", 1.0), 5.0, n2,
                                           config.master_seed, substream=172,
                                           policy=radial.StepPolicy(h=2e-3))
    rb5 = stats.rao_blackwell_cf(samples5, lam)
    limit = laws.cf_hh1_limit(lam, 1.0)
    rows.append(_row(
        "hh1_timechange_vs_limit_t5", "7", est_b,
        lam=lam, value=rb5.value, stderr=rb5.stderr, reference=limit.value,
        tolerance=0.02 + 3.0 * rb5.stderr, rule="abs diff <= 0.02 + 3*stderr",
        n_paths=n2, started=t0,
    ))
    return rows


def _run_c8(config):
    """cosh^2 moment of the hyperbolic radial diffusion vs closed form."""
    rows = []
    t = 0.5
    r0 = 1.0
    t0 = time.perf_counter()
    reference = laws.cosh2_moment(1.5, 1.5, r0, t)
    oracle = _rk4_cosh2(1.5, 1.5, r0, t)
    rows.append(_row(
        "cosh2_moment_vs_rk4", "8", "cosh2_moment vs Runge-Kutta ODE oracle",
        value=reference, reference=oracle, tolerance=1e-10 * abs(oracle),
        rule="rel diff <= 1e-10", started=t0,
    ))
    if _insufficient(config):
        rows.append(_skip_row("cosh2_moment_mc", "8",
                              "Monte Carlo cosh^2 vs cosh2_moment", "insufficient samples"))
        return rows
    n = min(config.n_paths, 100_000)
    for i, (alpha, beta) in enumerate(((1.5, 1.5), (2.5, -1.5))):
        t0 = time.perf_counter()
        spec = radial.RadialSpec("jacobi_hyp", r0, alpha=alpha, beta=beta)
        r_t, _, _, fail_step, _ = radial.implicit_endpoint_samples(
            spec, t, radial.StepPolicy(h=5e-4), radial.CLOCK_NONE,
            config.master_seed, 180 + i, n,
        )
        mean, se = stats.mean_stderr(np.cosh(r_t) ** 2)
        reference = laws.cosh2_moment(alpha, beta, r0, t)
        rows.append(_row(
            f"cosh2_moment_mc_a{alpha:g}_b{beta:g}", "8",
            "Monte Carlo mean cosh^2(r_t) vs cosh2_moment",
            value=mean, stderr=se, reference=reference, tolerance=3.0 * se,
            rule="abs diff <= 3*stderr", n_paths=n, started=t0,
        ))
    return rows


def _rk4_cosh2(alpha, beta, r0, t, n_steps=20_000):
    rate = 2.0 * (1.0 + alpha + beta)
    source = 1.0 + 2.0 * beta

    def f(y):
        return rate * y - source

    y = math.cosh(r0) ** 2
    h = t / n_steps
    for _ in range(n_steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def _run_c9(config):
    """Limit density normalisation, CF round trip, and Cauchy identity."""
    rows = []
    rmax = 60.0
    for r0 in (0.5, 1.0, 2.0):
        t0 = time.perf_counter()
        mass = laws.radial_cf_fn(lambda s: laws.hh1_limit_density(s, r0), 0.0,
                                 rmax, rel_tol=1e-8)
        rows.append(_row(
            f"hh1_density_mass_r0_{r0:g}", "9",
            "radial integral of hh1_limit_density vs 1",
            value=mass, reference=1.0, tolerance=1e-4,
            rule="abs diff <= 1e-4", started=t0,
        ))
    for r0 in (0.5, 1.0, 2.0):
        for lam in (0.5, 1.0, 2.0, 4.0):
            t0 = time.perf_counter()
            via_density = laws.radial_cf_fn(
                lambda s: laws.hh1_limit_density(s, r0), lam, rmax, rel_tol=1e-8)
            direct = laws.cf_hh1_limit(lam, r0)
            rows.append(_row(
                f"hh1_density_cf_roundtrip_r0_{r0:g}_lam{lam:g}", "9",
                "radial_cf of hh1_limit_density vs cf_hh1_limit",
                lam=lam, value=via_density, reference=direct.value,
                tolerance=1e-4, rule="abs diff <= 1e-4", started=t0,
            ))
    for y in (0.5, 1.0, 2.0):
        t0 = time.perf_counter()
        lam = 1.0
        via_density = laws.radial_cf_fn(
            lambda s: laws.relativistic_cauchy_density(s, y), lam, rmax + 20.0,
            rel_tol=1e-9)
        reference = math.exp(-y * (math.sqrt(1.0 + lam * lam) - 1.0))
        rows.append(_row(
            f"relativistic_cauchy_identity_y{y:g}", "9",
            "radial_cf of relativistic_cauchy_density vs exp(-y(sqrt(1+|lam|^2)-1))",
            lam=lam, value=via_density, reference=reference, tolerance=1e-5,
            rule="abs diff <= 1e-5", started=t0,
        ))
    return rows


def _run_c10(config):
    """Pathwise invariances of the discrete Stratonovich winding."""
    rows = []
    gen = rng.stream(config.master_seed, 0, 190)
    n_paths = 1000
    worst_left = 0.0
    worst_right = 0.0
    t0 = time.perf_counter()
    for _ in range(n_paths):
        m = 30
        pts = gen.standard_normal((m, 4)) * 0.4
        pts[:, 0] += 2.0
        times = np.linspace(0.0, 1.0, m)
        path = quat.SampledPath(times, pts)
        zeta = quat.stratonovich_winding(path)
        u = gen.standard_normal(4)
        u /= np.linalg.norm(u)
        left = quat.stratonovich_winding(quat.SampledPath(times, quat.mul(u, pts)))
        worst_left = max(worst_left, float(np.max(np.abs(left - zeta))))
        right = quat.stratonovich_winding(quat.SampledPath(times, quat.mul(pts, u)))
        expected = quat.adjoint_rotation(quat.conj(u), zeta)
        worst_right = max(worst_right, float(np.max(np.abs(right - expected))))
    rows.append(_row(
        "winding_left_invariance", "10",
        "stratonovich_winding(u*path) vs stratonovich_winding(path)",
        value=worst_left, reference=0.0, tolerance=1e-10,
        rule="max abs error <= 1e-10 over 1000 paths", n_paths=n_paths,
        started=t0,
    ))
    rows.append(_row(
        "winding_right_equivariance", "10",
        "stratonovich_winding(path*u) vs Ad(u^-1) stratonovich_winding(path)",
        value=worst_right, reference=0.0, tolerance=1e-10,
        rule="max abs error <= 1e-10 over 1000 paths", n_paths=n_paths,
        started=t0,
    ))
    t0 = time.perf_counter()
    errs = []
    for m in (200, 400, 800):
        s = np.linspace(0.0, 1.0, m + 1)
        pts = np.stack([np.cos(s), np.sin(s), np.zeros_like(s), np.zeros_like(s)], axis=1)
        zeta = quat.stratonovich_winding(quat.SampledPath(s, pts))
        errs.append(float(np.max(np.abs(zeta - np.array([1.0, 0.0, 0.0])))))
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    ok = all(3.5 <= r <= 4.5 for r in ratios)
    rows.append(_row(
        "winding_midpoint_second_order", "10",
        "circle-path error ratio under step halving vs 4",
        value=ratios[-1], reference=4.0, tolerance=0.5,
        rule="error ratio in [3.5, 4.5] for both halvings",
        passed=ok, started=t0,
        note="errors " + ", ".join(f"{e:.3e}" for e in errs),
    ))
    return rows


def _run_c11(config):
    """Determinism: byte-identical reports across runs and worker counts."""
    sub = RunConfig(
        geometry="flat",
        n_paths=min(config.n_paths, 400),
        master_seed=config.master_seed,
        workers=1,
    )
    t0 = time.perf_counter()
    criteria = ("1", "2", "4")
    first = run_verify(sub, criteria=criteria)
    second = run_verify(sub, criteria=criteria)
    sub_many = RunConfig(
        geometry="flat",
        n_paths=sub.n_paths,
        master_seed=config.master_seed,
        workers=8,
    )
    third = run_verify(sub_many, criteria=criteria)
    kernels.set_workers(config.workers)
    a = json.dumps(strip_wall_times(first.to_dict()["rows"]), sort_keys=True)
    b = json.dumps(strip_wall_times(second.to_dict()["rows"]), sort_keys=True)
    c = json.dumps(strip_wall_times(third.to_dict()["rows"]), sort_keys=True)
    same = a == b == c
    return [_row(
        "determinism_across_runs_and_workers", "11",
        "verify rows identical across repeated runs and 1 vs 8 workers",
        value=1.0 if same else 0.0, reference=1.0, tolerance=0.0,
        rule="byte-identical rows modulo wall_time",
        n_paths=sub.n_paths, started=t0, passed=same,
    )]


def strip_wall_times(obj):
    """Deep-copy obj with every wall_time entry removed."""
    if isinstance(obj, dict):
        return {k: strip_wall_times(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_wall_times(v) for v in obj]
    return obj


_CRITERIA = {
    "1": (_run_c1, {"flat"}),
    "2": (_run_c2, {"flat"}),
    "3": (_run_c3, {"flat"}),
    "4": (None, {"flat", "hp1", "hh1"}),  # handled separately per geometry
    "5": (_run_c5, {"hp1"}),
    "6": (_run_c6, {"hp1"}),
    "7": (_run_c7, {"hh1"}),
    "8": (_run_c8, {"hh1"}),
    "9": (_run_c9, {"hh1"}),
    "10": (_run_c10, {"flat"}),
    "11": (_run_c11, {"flat", "hp1", "hh1"}),
}


def run_verify(config, criteria=None):
    """Execute the acceptance comparisons selected by the configuration.

    ``criteria`` optionally restricts to a subset of criterion ids (used by
    the determinism check to avoid recursing into itself).
    """
    if not isinstance(config, RunConfig):
        config = RunConfig.from_dict(config)
    kernels.set_workers(config.workers)
    wanted = set(criteria) if criteria is not None else set(_CRITERIA)
    geometries = _GEOMETRIES if config.geometry == "all" else (config.geometry,)
    rows = []
    for cid in sorted(_CRITERIA, key=int):
        if cid not in wanted:
            continue
        runner, applicable = _CRITERIA[cid]
        if not applicable & set(geometries):
            continue
        if cid == "4":
            for geometry in geometries:
                rows.extend(_ks_rows(config, geometry))
        elif cid == "11":
            # never recurses: the sub-runs pin an explicit criteria subset
            rows.extend(_run_c11(config))
        else:
            rows.extend(runner(config))
    passed = sum(1 for r in rows if r["pass"] is True)
    failed = sum(1 for r in rows if r["pass"] is False)
    skipped = sum(1 for r in rows if r["pass"] is None)
    return Report(
        config=config.to_dict(),
        backend=kernels.ACTIVE_BACKEND,
        generator=rng.GENERATOR_NAME,
        rows=rows,
        summary={"passed": passed, "failed": failed, "skipped": skipped},
    )


def write_report(report, path):
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
