"""Identity-corpus verification suites.

Each suite samples one family of analytic identities of the SOS system
(trigonometric-style relations, derivative formulas certified against
central differences, recursion-vs-closed-form polynomial tables, ODE
residuals, finite-difference harmonicity, transform round trips) and
reports the worst residual against its tolerance.  The CLI `verify`
command runs these; the test suite reuses them with its own parameters.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import legendre
from .coords import (
    CartesianPoint,
    SosPoint,
    SystemConfig,
    cartesian_to_sos,
    compute_W,
    dW,
    metrics_at,
    sos_to_cartesian,
)
from .harmonic import (
    HarmonicSolution,
    eval_V_at,
    eval_V_cartesian,
    fit_boundary,
    laplacian_residual_fd,
    s_at_point,
)
from .series import (
    Region,
    SeriesKind,
    SeriesSpec,
    eval_series,
    gen_binom,
    region_of,
    w_border,
)
from .trig import (
    TrigBundle,
    d_fC2_dW,
    d_fS_over_fC_dW,
    d_hR2_dW,
    d_s_dW,
    s_limit,
    s_on_reference,
    trig_auto,
    trig_from_W,
    trig_from_W_robust,
    w_from_s,
)

# FD harmonicity: sampling shell (units of R0) and the coarse-residual floor
# below which the O(h^2) decay is unresolvable (exactly-polynomial low-degree
# modes difference to rounding noise, not truncation error).
HARMONICITY_SHELL = (4.0, 6.0)
HARMONICITY_RATIO_FLOOR = 1e-7


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    tolerance: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "max_residual", float(self.max_residual))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)


def _rel(x: float, ref: float) -> float:
    return abs(x - ref) / max(abs(ref), 1e-300)


def _w_samples(mu: float, per_region: int) -> list[float]:
    """W values inside both convergence regions plus the guard band."""
    border = w_border(mu)
    smalls = np.geomspace(0.03, 0.85, per_region) * border
    larges = border / np.geomspace(0.85, 0.02, per_region)
    band = border * np.array([0.93, 1.0, 1.07])
    return [float(w) for w in np.concatenate([smalls, band, larges])]


def _bundles_at(W: float, mu: float) -> list[TrigBundle]:
    """Robust bundle always; series bundle too when outside the guard band."""
    out = [trig_from_W_robust(W, mu)]
    if mu > 0.0 and region_of(W, mu) is not Region.NEAR_BORDER:
        out.append(trig_from_W(W, mu))
    return out


# --- generalized-trig identities ---------------------------------------------


def trig_identity_checks(mu: float, per_region: int = 8) -> list[CheckResult]:
    """Pythagorean/scale-factor relations and the closed W(s) inversion."""
    r_pyth = r_hr = r_ratio = r_power = r_round = r_paths = 0.0
    for W in _w_samples(mu, per_region):
        tbs = _bundles_at(W, mu)
        for tb in tbs:
            r_pyth = max(r_pyth, abs(tb.f_S**2 + tb.f_C**2 - 1.0))
            if mu > 0.0:
                r_hr = max(
                    r_hr,
                    abs(tb.f_S**2 - (1.0 + mu) * (1.0 - tb.h_R**2) / mu),
                    abs(tb.f_C**2 - ((1.0 + mu) * tb.h_R**2 - 1.0) / mu),
                )
            # squared sine/cosine ratio against the s form
            lhs = tb.f_S**2 / tb.f_C**2
            rhs = (1.0 + mu) * tb.s**2 / ((1.0 + mu) - tb.s**2)
            r_ratio = max(r_ratio, _rel(lhs, rhs))
            if mu > 0.0:
                # fractional-power form relating W, f_S/f_C and s; compared in
                # log form so the 1/mu exponents cannot overflow
                lhs = (-math.log(W) + (mu + 1.0) * math.log(tb.f_S / tb.f_C)) / mu
                rhs = 0.5 * math.log(1.0 + mu) / mu + math.log(tb.s)
                r_power = max(r_power, abs(lhs - rhs))
            r_round = max(r_round, _rel(w_from_s(tb.s, mu), W))
        if len(tbs) == 2:
            for f in ("h_R", "f_S", "f_C", "s"):
                r_paths = max(
                    r_paths, abs(getattr(tbs[0], f) - getattr(tbs[1], f))
                )
    checks = [
        CheckResult("trig.pythagorean", r_pyth, 1e-12),
        CheckResult("trig.ratio_vs_s", r_ratio, 1e-10),
        CheckResult("trig.w_of_s_roundtrip", r_round, 1e-8),
        CheckResult("trig.series_vs_robust", r_paths, 1e-10),
    ]
    if mu > 0.0:
        checks.insert(1, CheckResult("trig.scale_factor_relations", r_hr, 1e-12))
        checks.insert(3, CheckResult("trig.power_form", r_power, 1e-8))
    return checks


def derivative_checks(mu: float, per_region: int = 5) -> list[CheckResult]:
    """Analytic W-derivatives against central finite differences.

    Uses the robust path on both sides of the difference quotient so the
    quotient never straddles a series-region switch.
    """
    names = {
        # (value from bundle, analytic derivative, relative FD step)
        "deriv.hR2": (lambda tb: tb.h_R**2, d_hR2_dW, 1e-6),
        "deriv.fC2": (lambda tb: tb.f_C**2, d_fC2_dW, 1e-6),
        "deriv.fS_over_fC": (lambda tb: tb.f_S / tb.f_C, d_fS_over_fC_dW, 1e-6),
        "deriv.s": (lambda tb: tb.s, d_s_dW, 1e-6),
        # integral identities take a larger step: their check functions
        # divide tiny quantities at small W, amplifying rounding noise
        "deriv.log_tangent": (
            lambda tb: math.log(tb.f_S / tb.f_C),
            lambda tb: tb.h_R**2 / tb.W,
            1e-5,
        ),
        "deriv.radial_integral": (
            lambda tb: tb.W**2 * tb.h_R**2 / (2.0 * tb.f_S**2),
            lambda tb: tb.W * tb.h_R**2,
            1e-5,
        ),
    }
    worst = {name: 0.0 for name in names}
    for W in _w_samples(mu, per_region):
        mid = trig_from_W_robust(W, mu)
        for name, (value, analytic, rel_step) in names.items():
            step = rel_step * W
            lo = trig_from_W_robust(W - step, mu)
            hi = trig_from_W_robust(W + step, mu)
            fd = (value(hi) - value(lo)) / (2.0 * step)
            ref = analytic(mid)
            worst[name] = max(worst[name], abs(fd - ref) / max(abs(ref), 1e-12))
    return [CheckResult(name, worst[name], 1e-6) for name in names]


def series_identity_checks(mu: float) -> list[CheckResult]:
    """Series-level identities: term-ratio product rule and the log series.

    The log series is tested in the form fixed by the W -> 0 limit,
      sum_{k>=1} C(-mu k, k) W^(2k) / k = ln(f_S^2 / ((1+mu) W^2 f_C^2)),
    which differs from a raw antiderivative comparison by the constant
    ln(1+mu).
    """
    border = w_border(mu)
    r_ratio = 0.0
    for region, ws in (
        (Region.SMALL_NU, [0.1 * border, 0.5 * border, 0.8 * border]),
        (Region.LARGE_NU, [border / 0.8, border / 0.4, border / 0.05]),
    ):
        scale = 1.0 / (1.0 + mu) if region is Region.LARGE_NU else 1.0
        for a_s, c_s in ((-1.0, -(mu + 2.0)), ((mu + 1.0) / 2.0, -1.0)):
            a, c = a_s * scale, c_s * scale
            for W in ws:
                num = eval_series(SeriesSpec(a + c, mu, region, SeriesKind.SA), W)
                den = eval_series(SeriesSpec(c, mu, region, SeriesKind.SA), W)
                rat = eval_series(SeriesSpec(a, mu, region, SeriesKind.SC), W)
                r_ratio = max(r_ratio, _rel(num.value / den.value, rat.value))

    r_log = 0.0
    for W in (0.1 * border, 0.25 * border, 0.6 * border):
        acc = 0.0
        for k in range(1, 400):
            t = gen_binom(-mu * k, k) * W ** (2 * k) / k
            acc += t
            if abs(t) < 1e-18 and k > 8:
                break
        tb = trig_from_W_robust(W, mu)
        rhs = math.log(tb.f_S**2 / ((1.0 + mu) * W**2 * tb.f_C**2))
        r_log = max(r_log, abs(acc - rhs))
    return [
        CheckResult("series.ratio_identity", r_ratio, 1e-10),
        CheckResult("series.log_binomial_identity", r_log, 1e-8),
    ]


def spherical_series_checks() -> list[CheckResult]:
    """mu = 0 closed forms: (1 + W^2)^a and W^(2a) (1 + W^-2)^a."""
    worst = 0.0
    for a in (-2.0, -1.0, -0.5, 0.5, 1.5):
        for W in (0.05, 0.3, 0.7):
            got = eval_series(SeriesSpec(a, 0.0, Region.SMALL_NU, SeriesKind.SA), W)
            worst = max(worst, _rel(got.value, (1.0 + W * W) ** a))
        for W in (1.5, 3.0, 20.0):
            got = eval_series(SeriesSpec(a, 0.0, Region.LARGE_NU, SeriesKind.SA), W)
            worst = max(worst, _rel(got.value, W ** (2 * a) * (1.0 + W**-2.0) ** a))
    return [CheckResult("series.spherical_closed_forms", worst, 1e-12)]


# --- metric identities -------------------------------------------------------


def metric_checks(cfg: SystemConfig, n_nu: int = 9) -> list[CheckResult]:
    mu = cfg.mu
    r_cross = r_link = r_bounds = r_sphere = 0.0
    nus = np.linspace(0.03, math.pi / 2 - 0.05, n_nu)
    for R in (0.5 * cfg.R0, cfg.R0, 2.2 * cfg.R0):
        for nu in nus:
            mb = metrics_at(R, float(nu), cfg)
            r_cross = max(
                r_cross,
                _rel(mb.jac_over_hR2 * mb.h_R**2, mb.jacobian),
                _rel(mb.jac_over_hnu2 * mb.h_nu**2, mb.jacobian),
            )
            W = compute_W(R, float(nu), cfg)
            dw_dnu = dW(R, float(nu), cfg)[0]
            tb = trig_auto(abs(W), mu)
            lhs = mb.h_R**2 * mb.h_nu**2 * (1.0 + mu) ** 2
            rhs = tb.f_C**2 * tb.f_S**2 * R**2 * dw_dnu**2 / W**2
            r_link = max(r_link, _rel(lhs, rhs))
            eps = 1e-12
            if not (1.0 / math.sqrt(1.0 + mu) - eps <= mb.h_R <= 1.0 + eps):
                r_bounds = max(r_bounds, 1.0)
            if mu == 0.0:
                r_sphere = max(
                    r_sphere,
                    abs(mb.h_R - 1.0),
                    _rel(mb.h_nu, R),
                    _rel(mb.jacobian, R * R * math.cos(float(nu))),
                )
    checks = [
        CheckResult("metric.jacobian_ratios", r_cross, 1e-9),
        CheckResult("metric.hR_hnu_link", r_link, 1e-9),
        CheckResult("metric.hR_bounds", r_bounds, 0.5),
    ]
    if mu == 0.0:
        checks.append(CheckResult("metric.spherical_reduction", r_sphere, 1e-12))
    return checks


# --- transforms --------------------------------------------------------------


def transform_checks(
    cfg: SystemConfig, n_points: int = 120, seed: int = 20240901
) -> list[CheckResult]:
    mu = cfg.mu
    rng = random.Random(seed)
    r_round = r_member = r_mag = r_cone = 0.0
    for _ in range(n_points):
        R = cfg.R0 * math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
        nu = rng.uniform(-math.pi / 2 * 0.999, math.pi / 2 * 0.999)
        lam = rng.uniform(-math.pi, math.pi)
        p = SosPoint(R=R, nu=nu, lam=lam)
        c = sos_to_cartesian(p, cfg)
        # membership of the R-spheroid
        r_member = max(
            r_member, abs(c.x**2 + c.y**2 + (1.0 + mu) * c.z**2 - R * R) / (R * R)
        )
        # squared position magnitude from (R, s)
        s = s_at_point(R, nu, cfg)
        mag = R * R * (1.0 - mu * s * s / (1.0 + mu) ** 2)
        r_mag = max(r_mag, _rel(c.x**2 + c.y**2 + c.z**2, mag))
        back = cartesian_to_sos(c, cfg)
        r_round = max(
            r_round,
            abs(back.R - R) / R,
            abs(back.nu - nu),
            abs(back.lam - lam),
        )
        # cone invariance: scaling the position leaves (W, s, h_R, f_S, f_C) fixed
        c2 = CartesianPoint(2.0 * c.x, 2.0 * c.y, 2.0 * c.z)
        p2 = cartesian_to_sos(c2, cfg)
        if abs(nu) > 1e-3:
            w1 = compute_W(p.R, abs(p.nu), cfg)
            w2 = compute_W(p2.R, abs(p2.nu), cfg)
            r_cone = max(r_cone, _rel(w2, w1))
            t1 = trig_auto(w1, mu)
            t2 = trig_auto(w2, mu)
            for f in ("s", "h_R", "f_S", "f_C"):
                r_cone = max(r_cone, abs(getattr(t1, f) - getattr(t2, f)))
    return [
        CheckResult("transform.roundtrip", r_round, 1e-9),
        CheckResult("transform.spheroid_membership", r_member, 1e-10),
        CheckResult("transform.position_magnitude", r_mag, 1e-10),
        CheckResult("transform.cone_invariance", r_cone, 1e-9),
    ]


def anchor_checks(cfg: SystemConfig, n_nu: int = 20) -> list[CheckResult]:
    """Closed form of s on the reference spheroid plus endpoint values."""
    mu = cfg.mu
    worst = 0.0
    for nu in np.linspace(-math.pi / 2 + 0.02, math.pi / 2 - 0.02, n_nu):
        worst = max(
            worst, abs(s_at_point(cfg.R0, float(nu), cfg) - s_on_reference(float(nu), mu))
        )
    lim = s_limit(mu)
    ends = max(
        abs(s_at_point(cfg.R0, 0.0, cfg)),
        abs(s_at_point(cfg.R0, math.pi / 2, cfg) - lim),
        abs(trig_auto(0.0, mu).h_R - 1.0),
    )
    pole = sos_to_cartesian(SosPoint(R=cfg.R0, nu=math.pi / 2), cfg)
    ends = max(ends, abs(pole.z - cfg.R0 / lim), abs(pole.x), abs(pole.y))
    return [
        CheckResult("anchor.s_on_reference", worst, 1e-10),
        CheckResult("anchor.endpoints", ends, 1e-12),
    ]


# --- generalized Legendre ----------------------------------------------------


def _classical_p_coeffs(n_max: int) -> list[np.ndarray]:
    """Power-basis coefficients of classical Legendre polynomials (numpy oracle)."""
    out = []
    for n in range(n_max + 1):
        basis = np.polynomial.legendre.Legendre.basis(n)
        out.append(basis.convert(kind=np.polynomial.Polynomial).coef)
    return out


def table_checks(mu_values, reference_tables=None) -> list[CheckResult]:
    """Recursion output against the closed reference forms for n <= 6.

    `reference_tables` may replace the built-in closed forms (used as an
    externally corruptible fixture by the negative-control test).
    """
    worst = 0.0
    for mu in mu_values:
        for n in range(7):
            for t_form in (False, True):
                got = (legendre.t_poly if t_form else legendre.p_poly)(n, float(mu))
                if reference_tables is None:
                    ref = (legendre.t_reference if t_form else legendre.p_reference)(
                        n, float(mu)
                    ).coeffs
                else:
                    key = "T" if t_form else "P"
                    ref = reference_tables[key][f"{float(mu):.17g}"][n]
                for cg, cr in zip(got.coeffs, ref):
                    if cr == 0.0:
                        worst = max(worst, abs(cg))
                    else:
                        worst = max(worst, abs(cg - cr) / abs(cr))
    return [CheckResult("legendre.table_exactness", worst, 1e-13)]


def reference_tables_payload(mu_values) -> dict:
    """JSON-serializable closed-form tables, the `verify --fixtures` format."""
    payload = {"P": {}, "T": {}}
    for mu in mu_values:
        key = f"{float(mu):.17g}"
        payload["P"][key] = [list(legendre.p_reference(n, float(mu)).coeffs) for n in range(7)]
        payload["T"][key] = [list(legendre.t_reference(n, float(mu)).coeffs) for n in range(7)]
    return payload


def spherical_reduction_checks(n_max: int = 12) -> list[CheckResult]:
    """mu = 0 collapse onto classical Legendre functions."""
    classical = _classical_p_coeffs(n_max)
    worst_p = 0.0
    for n in range(n_max + 1):
        got = legendre.p_poly(n, 0.0).coeffs
        ref = classical[n]
        for j in range(n + 1):
            cr = ref[j] if j < len(ref) else 0.0
            worst_p = max(worst_p, abs(got[j] - cr) / max(1.0, abs(cr)))
    # classical second kind, explicit low-degree forms
    def q_classical(n: int, x: float) -> float:
        q0 = 0.5 * math.log((1.0 + x) / (1.0 - x))
        if n == 0:
            return q0
        if n == 1:
            return x * q0 - 1.0
        if n == 2:
            return (3.0 * x * x - 1.0) / 2.0 * q0 - 1.5 * x
        return (5.0 * x**3 - 3.0 * x) / 2.0 * q0 - (2.5 * x * x - 2.0 / 3.0)

    worst_q = 0.0
    for n in range(4):
        for x in (-0.9, -0.5, 0.1, 0.5, 0.9):
            worst_q = max(worst_q, abs(legendre.eval_q(n, x, 0.0) - q_classical(n, x)))
    return [
        CheckResult("legendre.spherical_P", worst_p, 1e-12),
        CheckResult("legendre.spherical_Q", worst_q, 1e-10),
    ]


def ode_checks(mu: float, n_max: int = 10, n_s: int = 50) -> list[CheckResult]:
    """Residual of the generalized Legendre equation for P_n and Q_n."""
    lim = s_limit(mu)
    svals = np.linspace(0.05, 0.95, n_s) * lim
    worst_p = worst_q = 0.0
    for n in range(n_max + 1):
        poly = legendre.p_poly(n, mu)
        for s in svals:
            s = float(s)
            F = legendre.eval_poly(poly, s)
            dF = legendre.eval_poly_deriv(poly, s, 1)
            d2F = legendre.eval_poly_deriv(poly, s, 2)
            res = legendre.ode_residual(F, dF, d2F, s, n, mu)
            worst_p = max(worst_p, abs(res) / (1.0 + abs(F) + abs(dF) + abs(d2F)))
            Q, dQ, d2Q = legendre.eval_q_derivs(n, s, mu)
            res = legendre.ode_residual(Q, dQ, d2Q, s, n, mu)
            worst_q = max(worst_q, abs(res) / (1.0 + abs(Q) + abs(dQ) + abs(d2Q)))
    return [
        CheckResult("legendre.ode_first_kind", worst_p, 1e-8),
        CheckResult("legendre.ode_second_kind", worst_q, 1e-8),
    ]


def structure_checks(mu: float) -> list[CheckResult]:
    """Parity, pole values and the non-orthogonality witness."""
    r_parity = 0.0
    for n in range(9):
        poly = legendre.p_poly(n, mu)
        for j, c in enumerate(poly.coeffs):
            if (j - n) % 2 != 0:
                r_parity = max(r_parity, abs(c))
        for s in (0.3, 0.7):
            r_parity = max(
                r_parity,
                abs(
                    legendre.eval_poly(poly, -s)
                    - (-1.0) ** n * legendre.eval_poly(poly, s)
                ),
            )
    r_parity = max(r_parity, abs(legendre.q0(0.2, mu) + legendre.q0(-0.2, mu)))

    lim = s_limit(mu)
    r_pole = abs(legendre.eval_poly(legendre.p_poly(2, mu), lim) - 1.0 / (1.0 + mu))
    finite_ok = all(
        math.isfinite(legendre.eval_poly(legendre.p_poly(n, mu), lim)) for n in range(11)
    )
    if not finite_ok:
        r_pole = math.inf

    # negative control: for oblate families P1 and P3 are NOT orthogonal
    # under unit weight (they are at mu = 0); quadrature, not closed form.
    # Gated to mu values where the overlap is decisively zero or nonzero.
    if mu == 0.0 or mu >= 0.5:
        trapezoid = getattr(np, "trapezoid", np.trapz)
        ss = np.linspace(-lim, lim, 4001)
        p1 = np.array([legendre.eval_poly(legendre.p_poly(1, mu), float(s)) for s in ss])
        p3 = np.array([legendre.eval_poly(legendre.p_poly(3, mu), float(s)) for s in ss])
        overlap = float(trapezoid(p1 * p3, ss))
        r_witness = 0.0 if (mu == 0.0) == (abs(overlap) < 1e-3) else 1.0
    else:
        r_witness = 0.0

    return [
        CheckResult("legendre.parity", r_parity, 1e-13),
        CheckResult("legendre.pole_values", r_pole, 1e-12),
        CheckResult("legendre.nonorthogonality_witness", r_witness, 0.5),
    ]


# --- harmonicity -------------------------------------------------------------


def _mode_solution(cfg: SystemConfig, kind: str, n: int) -> HarmonicSolution:
    coeffs = tuple(1.0 if i == n else 0.0 for i in range(n + 1))
    if kind == "a":
        return HarmonicSolution(a=coeffs, b=(), cfg=cfg)
    return HarmonicSolution(a=(), b=coeffs, cfg=cfg)


def _shell_point(
    rng: random.Random, cfg: SystemConfig, s_cap: float | None
) -> CartesianPoint:
    lim = s_limit(cfg.mu)
    while True:
        r = cfg.R0 * rng.uniform(*HARMONICITY_SHELL)
        cth = rng.uniform(-1.0, 1.0)
        sth = math.sqrt(1.0 - cth * cth)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        c = CartesianPoint(r * sth * math.cos(phi), r * sth * math.sin(phi), r * cth)
        R = math.sqrt(c.x**2 + c.y**2 + (1.0 + cfg.mu) * c.z**2)
        s = (1.0 + cfg.mu) * c.z / R
        if s_cap is None or abs(s) <= s_cap * lim:
            return c


def _grad_norm(sol: HarmonicSolution, c: CartesianPoint, h: float) -> float:
    comps = []
    for dx, dy, dz in ((h, 0.0, 0.0), (0.0, h, 0.0), (0.0, 0.0, h)):
        vp = eval_V_cartesian(sol, CartesianPoint(c.x + dx, c.y + dy, c.z + dz))
        vm = eval_V_cartesian(sol, CartesianPoint(c.x - dx, c.y - dy, c.z - dz))
        comps.append((vp - vm) / (2.0 * h))
    return math.hypot(*comps)


def harmonicity_checks(
    cfg: SystemConfig,
    a_max: int = 6,
    b_max: int = 3,
    points_per_mode: int = 20,
    seed: int = 20240902,
    h_coarse: float = 1e-2,
    h_fine: float = 5e-3,
) -> list[CheckResult]:
    """Cartesian FD Laplacian of each pure mode: O(h^2) decay to zero.

    Residuals are normalized by |grad V| / R0.  The decay ratio is asserted
    only where the coarse residual exceeds the resolvability floor; modes of
    degree <= 3 are polynomials the 7-point stencil differentiates exactly,
    so their residuals sit at rounding level for every h.
    """
    rng = random.Random(seed)
    worst_mag = 0.0
    ratio_lo, ratio_hi = math.inf, 0.0
    resolvable = 0
    modes = [("a", n) for n in range(a_max + 1)] + [("b", n) for n in range(b_max + 1)]
    for kind, n in modes:
        sol = _mode_solution(cfg, kind, n)
        s_cap = 0.9 if kind == "b" else None
        for _ in range(points_per_mode):
            c = _shell_point(rng, cfg, s_cap)
            grad = _grad_norm(sol, c, h_fine * cfg.R0)
            if grad == 0.0:
                # constant mode: the stencil cancels exactly
                grad = abs(eval_V_cartesian(sol, c)) / cfg.R0
            lap_c = abs(laplacian_residual_fd(sol, c, h_coarse * cfg.R0))
            lap_f = abs(laplacian_residual_fd(sol, c, h_fine * cfg.R0))
            norm_c = lap_c * cfg.R0 / grad
            norm_f = lap_f * cfg.R0 / grad
            worst_mag = max(worst_mag, norm_f)
            if norm_c > HARMONICITY_RATIO_FLOOR:
                resolvable += 1
                ratio = norm_c / norm_f
                ratio_lo = min(ratio_lo, ratio)
                ratio_hi = max(ratio_hi, ratio)
    if resolvable == 0:
        ratio_residual = math.inf
    else:
        ratio_residual = max(abs(ratio_lo - 4.0), abs(ratio_hi - 4.0))
    return [
        CheckResult("harmonic.fd_magnitude", worst_mag, 1e-5),
        CheckResult("harmonic.fd_decay_ratio", ratio_residual, 0.5),
    ]


def fit_checks(cfg: SystemConfig, seed: int = 20240903) -> list[CheckResult]:
    """Noiseless boundary-fit round trips."""
    rng = random.Random(seed)
    nus = np.linspace(-1.45, 1.45, 41)
    truth = HarmonicSolution(
        a=tuple(rng.uniform(-1.0, 1.0) for _ in range(6)), b=(), cfg=cfg
    )
    samples = [
        (float(nu), eval_V_at(truth, SosPoint(R=cfg.R0, nu=float(nu)))) for nu in nus
    ]
    fitted, _ = fit_boundary(samples, 5, cfg)
    scale = np.array([cfg.R0**n for n in range(6)])
    r_fit = float(np.max(np.abs((np.array(fitted.a) - np.array(truth.a)) * scale)))

    z_field = HarmonicSolution(a=(0.0, 1.0), b=(), cfg=cfg)
    samples = [
        (float(nu), eval_V_at(z_field, SosPoint(R=cfg.R0, nu=float(nu)))) for nu in nus
    ]
    fitted, _ = fit_boundary(samples, 3, cfg)
    r_z = abs(fitted.a[1] - 1.0)
    for n in (0, 2, 3):
        r_z = max(r_z, abs(fitted.a[n]) * cfg.R0**n)
    return [
        CheckResult("fit.roundtrip", r_fit, 1e-8),
        CheckResult("fit.z_field", r_z, 1e-8),
    ]


# --- suite driver ------------------------------------------------------------


def run_suite(
    cfg: SystemConfig, level: str = "quick", reference_tables=None
) -> list[CheckResult]:
    """All identity suites at the configured mu; `full` widens every sweep."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    full = level == "full"
    mu = cfg.mu
    checks: list[CheckResult] = []
    checks += trig_identity_checks(mu, per_region=12 if full else 6)
    checks += derivative_checks(mu, per_region=6 if full else 3)
    checks += series_identity_checks(mu)
    checks += spherical_series_checks()
    checks += metric_checks(cfg, n_nu=11 if full else 5)
    checks += transform_checks(cfg, n_points=160 if full else 40)
    checks += anchor_checks(cfg)
    checks += table_checks([mu], reference_tables)
    checks += spherical_reduction_checks(n_max=12 if full else 8)
    checks += ode_checks(mu, n_max=10 if full else 6, n_s=50 if full else 15)
    checks += structure_checks(mu)
    checks += harmonicity_checks(
        cfg,
        a_max=6 if full else 3,
        b_max=3 if full else 1,
        points_per_mode=20 if full else 4,
    )
    checks += fit_checks(cfg)
    return checks
