"""Similar oblate spheroidal (SOS) coordinates and interior harmonics."""

from .coords import (
    CartesianPoint,
    MetricBundle,
    SosPoint,
    SystemConfig,
    cartesian_to_sos,
    compute_W,
    dW,
    metrics_at,
    sos_to_cartesian,
)
from .errors import (
    DegenerateOriginError,
    NearBorderError,
    NonConvergentError,
    PoleDivergenceError,
    PoleLimitError,
    RankDeficientError,
    RegionViolationError,
    SosError,
    StencilOutOfDomainError,
)
from .harmonic import (
    FitDiagnostics,
    HarmonicSolution,
    eval_V,
    eval_V_at,
    eval_V_cartesian,
    fit_boundary,
    laplacian_residual_fd,
    laplacian_residual_sos,
    load_solution,
    s_at_point,
    save_solution,
    separation_check,
)
from .legendre import (
    GenLegendrePoly,
    SecondKindFn,
    eval_poly,
    eval_poly_deriv,
    eval_q,
    ode_residual,
    p_poly,
    q0,
    t_poly,
)
from .series import (
    Region,
    SeriesKind,
    SeriesResult,
    SeriesSpec,
    eval_series,
    gen_binom,
    region_of,
    w_border,
)
from .trig import (
    TrigBundle,
    s_limit,
    s_on_reference,
    trig_auto,
    trig_from_W,
    trig_from_W_robust,
    w_from_s,
)

__version__ = "0.1.0"
