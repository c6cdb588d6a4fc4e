"""Interior axisymmetric harmonic expansion in SOS coordinates.

    V(R, s) = sum_n a_n R^n P_n(s) + sum_n b_n R^n Q_n(s)

with the generalized Legendre functions P_n, Q_n of the legendre module and
s = f_S/h_R obtained from the position.  Degrees are dense 0..N; radial
factors are computed as (R/R0)^n with R0^n folded into scaled coefficients,
which is also the convention of the JSON coefficient file
({"mu", "R0", "convention": "R_over_R0", "a", "b"}).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import legendre
from .coords import (
    CartesianPoint,
    SosPoint,
    SystemConfig,
    cartesian_to_sos,
    compute_W,
    metrics_at,
)
from .errors import (
    DegenerateOriginError,
    PoleDivergenceError,
    PoleLimitError,
    RankDeficientError,
    StencilOutOfDomainError,
)
from .trig import s_limit, s_on_reference, trig_auto

_HALF_PI = math.pi / 2

FILE_CONVENTION = "R_over_R0"


@dataclass(frozen=True)
class HarmonicSolution:
    """Expansion coefficients; a[n], b[n] multiply R^n (R in length units)."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    cfg: SystemConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if not all(math.isfinite(v) for v in self.a + self.b):
            raise ValueError("coefficients must be finite")

    @property
    def has_second_kind(self) -> bool:
        return any(v != 0.0 for v in self.b)


@dataclass(frozen=True)
class FitDiagnostics:
    residual_norm: float
    condition: float
    rank: int
    n_params: int


def separation_check(K_d: float) -> float:
    """Radial-angular coupling of the separation constants: K_b = K_d (K_d - 2)."""
    return K_d * (K_d - 2.0)


def s_at_point(R: float, nu: float, cfg: SystemConfig) -> float:
    """Signed s at (R, nu); poles use the closed endpoint value."""
    if abs(nu) >= _HALF_PI:
        return math.copysign(s_limit(cfg.mu), nu)
    if nu == 0.0:
        return 0.0
    W = compute_W(R, abs(nu), cfg)
    return math.copysign(trig_auto(W, cfg.mu).s, nu)


def eval_V(sol: HarmonicSolution, R: float, s: float) -> float:
    """Potential at radial coordinate R and angular argument s."""
    mu = sol.cfg.mu
    lim = s_limit(mu)
    if abs(s) > lim * (1.0 + 1e-12):
        raise ValueError("s outside [-sqrt(1+mu), sqrt(1+mu)]")
    if R <= 0.0:
        raise ValueError("R must be positive")
    rr = R / sol.cfg.R0
    total = 0.0
    pw = 1.0
    scale = 1.0
    for n, an in enumerate(sol.a):
        if n > 0:
            pw *= rr
            scale *= sol.cfg.R0
        if an != 0.0:
            total += an * scale * pw * legendre.eval_poly(legendre.p_poly(n, mu), s)
    if sol.has_second_kind:
        # the q0 logarithm is shared by every degree
        q0 = legendre.q0(s, mu)
        g = math.sqrt((1.0 + mu) ** 2 - mu * s * s)
        pw = 1.0
        scale = 1.0
        for n, bn in enumerate(sol.b):
            if n > 0:
                pw *= rr
                scale *= sol.cfg.R0
            if bn != 0.0:
                qn = legendre.eval_poly(legendre.p_poly(n, mu), s) * q0 - legendre.eval_poly(
                    legendre.t_poly(n, mu), s
                ) * g
                total += bn * scale * pw * qn
    return total


def eval_V_at(sol: HarmonicSolution, p: SosPoint) -> float:
    """Potential at an SOS point (robust s evaluation near the border)."""
    return eval_V(sol, p.R, s_at_point(p.R, p.nu, sol.cfg))


def eval_V_cartesian(sol: HarmonicSolution, c: CartesianPoint) -> float:
    """Potential at a Cartesian point."""
    p = cartesian_to_sos(c, sol.cfg)
    return eval_V(sol, p.R, s_at_point(p.R, p.nu, sol.cfg))


def laplacian_residual_fd(sol: HarmonicSolution, c: CartesianPoint, h: float) -> float:
    """7-point central finite-difference Laplacian at c with step h.

    Entirely independent of the SOS-form metric factors: the stencil works in
    Cartesian coordinates and each value goes through the inverse transform.
    For a true solution the result converges to 0 as O(h^2).
    """
    if h <= 0.0:
        raise ValueError("h must be positive")
    try:
        v0 = eval_V_cartesian(sol, c)
        acc = 0.0
        for dx, dy, dz in (
            (h, 0.0, 0.0),
            (-h, 0.0, 0.0),
            (0.0, h, 0.0),
            (0.0, -h, 0.0),
            (0.0, 0.0, h),
            (0.0, 0.0, -h),
        ):
            acc += eval_V_cartesian(sol, CartesianPoint(c.x + dx, c.y + dy, c.z + dz))
    except (DegenerateOriginError, PoleDivergenceError) as exc:
        raise StencilOutOfDomainError(str(exc)) from exc
    return (acc - 6.0 * v0) / (h * h)


def laplacian_residual_sos(sol: HarmonicSolution, p: SosPoint, h: float) -> float:
    """Second witness: divergence-form Laplacian in SOS coordinates.

    Differences (1/J) [d/dR (J/h_R^2 dV/dR) + d/dnu (J/h_nu^2 dV/dnu)] with
    nested central steps dR = h R, dnu = h, so the metric-ratio series enter
    the check directly (the Cartesian witness above never touches them).
    Converges to 0 as O(h^2) for a true solution.
    """
    if h <= 0.0:
        raise ValueError("h must be positive")
    cfg = sol.cfg
    dR = h * p.R
    dnu = h

    def dV_dR(R: float, nu: float) -> float:
        return (
            eval_V_at(sol, SosPoint(R + dR, nu, p.lam))
            - eval_V_at(sol, SosPoint(R - dR, nu, p.lam))
        ) / (2.0 * dR)

    def dV_dnu(R: float, nu: float) -> float:
        return (
            eval_V_at(sol, SosPoint(R, nu + dnu, p.lam))
            - eval_V_at(sol, SosPoint(R, nu - dnu, p.lam))
        ) / (2.0 * dnu)

    try:
        flux_R_hi = metrics_at(p.R + dR, p.nu, cfg).jac_over_hR2 * dV_dR(p.R + dR, p.nu)
        flux_R_lo = metrics_at(p.R - dR, p.nu, cfg).jac_over_hR2 * dV_dR(p.R - dR, p.nu)
        flux_n_hi = metrics_at(p.R, p.nu + dnu, cfg).jac_over_hnu2 * dV_dnu(p.R, p.nu + dnu)
        flux_n_lo = metrics_at(p.R, p.nu - dnu, cfg).jac_over_hnu2 * dV_dnu(p.R, p.nu - dnu)
        jac = metrics_at(p.R, p.nu, cfg).jacobian
    except (DegenerateOriginError, PoleDivergenceError, PoleLimitError, ValueError) as exc:
        # ValueError: a stencil arm left the coordinate chart (nu beyond a pole)
        raise StencilOutOfDomainError(str(exc)) from exc
    div = (flux_R_hi - flux_R_lo) / (2.0 * dR) + (flux_n_hi - flux_n_lo) / (2.0 * dnu)
    return div / jac


def fit_boundary(
    samples,
    N: int,
    cfg: SystemConfig,
    include_second_kind: bool = False,
) -> tuple[HarmonicSolution, FitDiagnostics]:
    """Least-squares fit of boundary values on the reference spheroid.

    samples: sequence of (nu, V) pairs taken at R = R0, where s has the
    closed form sqrt(1+mu) sin(nu).  The generalized Legendre functions are
    not orthogonal, so the coefficients come from an orthogonal-factorization
    least-squares solve of the dense design matrix; the 2-norm residual and
    the design-matrix condition number are reported.
    """
    if N < 0:
        raise ValueError("degree must be non-negative")
    data = np.asarray(list(samples), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("samples must be (nu, V) pairs")
    nus = data[:, 0]
    vals = data[:, 1]
    n_cols = (N + 1) * (2 if include_second_kind else 1)
    if len(nus) < n_cols:
        raise RankDeficientError(
            f"{len(nus)} samples cannot determine {n_cols} coefficients"
        )
    mu = cfg.mu
    svals = np.array([s_on_reference(nu, mu) for nu in nus])
    if include_second_kind and np.any(
        np.abs(svals) >= s_limit(mu) * (1.0 - 1e-12)
    ):
        raise PoleDivergenceError("second-kind fit cannot use samples at |nu| = pi/2")

    design = np.empty((len(nus), n_cols))
    for n in range(N + 1):
        poly = legendre.p_poly(n, mu)
        design[:, n] = [legendre.eval_poly(poly, s) for s in svals]
    if include_second_kind:
        for n in range(N + 1):
            design[:, N + 1 + n] = [legendre.eval_q(n, s, mu) for s in svals]

    coef, _, rank, sv = np.linalg.lstsq(design, vals, rcond=None)
    if rank < n_cols:
        raise RankDeficientError(
            f"design matrix rank {rank} < {n_cols}; samples cannot distinguish degrees"
        )
    condition = float(sv[0] / sv[-1]) if sv[-1] > 0.0 else math.inf
    residual_norm = float(np.linalg.norm(design @ coef - vals))

    # columns were built at R = R0 where (R/R0)^n = 1, so coef[n] = a_n R0^n
    radial = cfg.R0 ** np.arange(N + 1)
    a = coef[: N + 1] / radial
    b = coef[N + 1 :] / radial if include_second_kind else np.zeros(0)
    sol = HarmonicSolution(a=tuple(a), b=tuple(b), cfg=cfg)
    diag = FitDiagnostics(
        residual_norm=residual_norm, condition=condition, rank=int(rank), n_params=n_cols
    )
    return sol, diag


# --- coefficient file -------------------------------------------------------


def solution_to_dict(sol: HarmonicSolution) -> dict:
    """JSON payload with R0^n folded into the stored coefficients."""
    r0 = sol.cfg.R0
    return {
        "mu": sol.cfg.mu,
        "R0": r0,
        "convention": FILE_CONVENTION,
        "a": [an * r0**n for n, an in enumerate(sol.a)],
        "b": [bn * r0**n for n, bn in enumerate(sol.b)],
    }


def solution_from_dict(payload) -> HarmonicSolution:
    if not isinstance(payload, dict):
        raise ValueError("coefficient payload must be a JSON object")
    required = {"mu", "R0", "convention", "a", "b"}
    missing = required - payload.keys()
    if missing:
        raise ValueError(f"coefficient payload missing fields: {sorted(missing)}")
    if payload["convention"] != FILE_CONVENTION:
        raise ValueError(f"unknown coefficient convention {payload['convention']!r}")
    for key in ("a", "b"):
        if not isinstance(payload[key], list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in payload[key]
        ):
            raise ValueError(f"field {key!r} must be an array of numbers")
    cfg = SystemConfig(mu=float(payload["mu"]), R0=float(payload["R0"]))
    a = [float(v) / cfg.R0**n for n, v in enumerate(payload["a"])]
    b = [float(v) / cfg.R0**n for n, v in enumerate(payload["b"])]
    return HarmonicSolution(a=tuple(a), b=tuple(b), cfg=cfg)


def save_solution(sol: HarmonicSolution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(solution_to_dict(sol), fh, indent=2)
        fh.write("\n")


def load_solution(path) -> HarmonicSolution:
    with open(path, encoding="utf-8") as fh:
        return solution_from_dict(json.load(fh))
