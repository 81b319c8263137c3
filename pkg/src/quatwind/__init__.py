"""Windings of quaternionic Brownian motion.

Simulation of the su(2)-valued winding functional of Brownian motion on the
flat quaternionic space, the quaternionic projective line and the
quaternionic hyperbolic space, together with the closed-form
characteristic functions, Girsanov identities and limiting laws they
satisfy, cross-validated by Monte Carlo and quadrature.
"""

from .errors import ConfigError, DomainError, QuadratureError, StepFailureError
from .kernels import ACTIVE_BACKEND
from .laws import (
    CfEstimate,
    DensityGrid,
    cf_flat_exact,
    cf_flat_girsanov,
    cf_hh1_identity,
    cf_hh1_limit,
    cf_hp1_identity,
    cosh2_moment,
    hh1_limit_density,
    hh1_limit_density_grid,
    radial_cf,
    radial_cf_fn,
    relativistic_cauchy_density,
)
from .quat import (
    SampledPath,
    adjoint_rotation,
    conj,
    imag,
    mul,
    norm,
    polar_decompose,
    quaternion,
    stratonovich_winding,
    winding_form,
)
from .radial import (
    RadialPath,
    RadialSpec,
    StepPolicy,
    simulate_bessel4_exact,
    simulate_radial_implicit,
)
from .stats import KsResult, empirical_cf, ks_two_sample, mean_stderr, rao_blackwell_cf
from .verify import Report, RunConfig, run_verify, write_report
from .winding import Geometry, WindingSamples, simulate_direct, simulate_timechange

__version__ = "0.1.0"
