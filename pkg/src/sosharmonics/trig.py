"""Generalized sine/cosine of the SOS system and the s = f_S/h_R argument.

f_S and f_C depend on position only through the cone parameter W and reduce
to sin(nu), cos(nu) in the spherical limit mu = 0 (where W = tan(nu)).  The
ratio s = f_S/h_R is the argument of the harmonic angular functions; it runs
from 0 on the equator to sqrt(1+mu) on the rotation axis and satisfies the
closed inversion

    W^2 = (s^2/(1+mu)) / (1 - s^2/(1+mu))^(1+mu)

which gives a root-finding evaluation path valid for every W, including the
series guard band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NearBorderError, PoleLimitError
from .series import (
    DEFAULT_TOL,
    Region,
    eval_series,
    quantity_series,
    region_of,
)

_S_BRACKET_MARGIN = 1e-12
_BISECT_WIDTH = 1e-3
_NEWTON_STEP_TOL = 1e-15
_NEWTON_MAX_ITER = 80


@dataclass(frozen=True)
class TrigBundle:
    """Jointly consistent (W, h_R, f_S, f_C, s) on one cone surface."""

    W: float
    h_R: float
    f_S: float
    f_C: float
    s: float
    mu: float


def s_limit(mu: float) -> float:
    """Upper limit sqrt(1+mu) of s, attained on the rotation axis."""
    return math.sqrt(1.0 + mu)


def s_on_reference(nu: float, mu: float) -> float:
    """Closed form of s on the reference spheroid: sqrt(1+mu) * sin(nu)."""
    if abs(nu) > math.pi / 2:
        raise ValueError("nu must lie in [-pi/2, pi/2]")
    return math.sqrt(1.0 + mu) * math.sin(nu)


def w_from_s(s: float, mu: float) -> float:
    """Invert s back to the cone parameter W; strictly increasing in s."""
    lim = s_limit(mu)
    if s < 0.0:
        raise ValueError("s must be non-negative")
    if s >= lim:
        raise PoleLimitError("W diverges as s approaches sqrt(1+mu)")
    t = s * s / (1.0 + mu)
    return math.sqrt(t) * (1.0 - t) ** (-(1.0 + mu) / 2.0)


def _log_w_from_s(s: float, mu: float) -> float:
    # log form of the inversion; stable arbitrarily close to the s limit
    t = s * s / (1.0 + mu)
    return 0.5 * math.log(t) - 0.5 * (1.0 + mu) * math.log1p(-t)


def _bundle_from_s(W: float, s: float, mu: float) -> TrigBundle:
    # h_R^2 = (1+mu)/((1+mu) + mu s^2); cancellation-free companions
    denom = (1.0 + mu) + mu * s * s
    h_R = math.sqrt((1.0 + mu) / denom)
    f_S = s * h_R
    f_C = math.sqrt(max((1.0 + mu) - s * s, 0.0) / denom)
    return TrigBundle(W=W, h_R=h_R, f_S=f_S, f_C=f_C, s=s, mu=mu)


def _spherical_bundle(W: float) -> TrigBundle:
    # mu = 0: W = tan(nu)
    c = 1.0 / math.sqrt(1.0 + W * W)
    return TrigBundle(W=W, h_R=1.0, f_S=W * c, f_C=c, s=W * c, mu=0.0)


def trig_from_W(W: float, mu: float, tol: float = DEFAULT_TOL) -> TrigBundle:
    """Series evaluation of the bundle; refuses the border guard band."""
    if W < 0:
        raise ValueError("W must be non-negative")
    if mu == 0.0:
        return _spherical_bundle(W)
    if W == 0.0:
        return TrigBundle(W=0.0, h_R=1.0, f_S=0.0, f_C=1.0, s=0.0, mu=mu)
    region = region_of(W, mu)
    if region is Region.NEAR_BORDER:
        raise NearBorderError(
            f"W={W} lies in the guard band; use trig_from_W_robust"
        )
    hR2 = eval_series(quantity_series("hR2", mu, region), W, tol).value
    fC2 = eval_series(quantity_series("fC2", mu, region), W, tol).value
    fS2 = (1.0 + mu) * W * W * eval_series(
        quantity_series("fS2", mu, region), W, tol
    ).value
    h_R = math.sqrt(hR2)
    f_S = math.sqrt(fS2)
    return TrigBundle(W=W, h_R=h_R, f_S=f_S, f_C=math.sqrt(fC2), s=f_S / h_R, mu=mu)


def trig_from_W_robust(W: float, mu: float) -> TrigBundle:
    """Series-free bundle: solves the closed W(s) inversion for s.

    Valid for every finite W >= 0, including the guard band.  Bisection
    narrows the bracket, then Newton (analytic derivative of log W(s))
    polishes the root.
    """
    if W < 0:
        raise ValueError("W must be non-negative")
    if mu == 0.0:
        return _spherical_bundle(W)
    if W == 0.0:
        return TrigBundle(W=0.0, h_R=1.0, f_S=0.0, f_C=1.0, s=0.0, mu=mu)

    lim = s_limit(mu)
    target = math.log(W)
    lo, hi = 0.0, lim - _S_BRACKET_MARGIN
    if _log_w_from_s(hi, mu) < target:
        s = hi  # W beyond the bracket ceiling: clamp to the axis limit
        return _bundle_from_s(W, s, mu)
    # bisection: g is -inf at s=0+, so the low end never needs evaluating
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if _log_w_from_s(mid, mu) < target:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    for _ in range(_NEWTON_MAX_ITER):
        g = _log_w_from_s(s, mu) - target
        dg = 1.0 / s + s * (1.0 + mu) / ((1.0 + mu) - s * s)
        step = g / dg
        s_new = s - step
        if not lo < s_new < hi:
            # fall back to bisection inside the bracket
            if g > 0.0:
                hi = s
            else:
                lo = s
            s_new = 0.5 * (lo + hi)
        if abs(s_new - s) <= _NEWTON_STEP_TOL:
            s = s_new
            break
        s = s_new
    return _bundle_from_s(W, s, mu)


def trig_auto(W: float, mu: float, tol: float = DEFAULT_TOL) -> TrigBundle:
    """Series bundle where the series converge fast, robust path otherwise."""
    if mu == 0.0 or W == 0.0:
        return trig_from_W_robust(W, mu)
    if region_of(W, mu) is Region.NEAR_BORDER:
        return trig_from_W_robust(W, mu)
    return trig_from_W(W, mu, tol)


# --- analytic W-derivatives of bundle members -------------------------------
#
# Every right-hand side is a short monomial in (h_R, f_S, f_C), so they are
# exposed as functions of an evaluated bundle rather than of raw W.


def d_hR2_dW(tb: TrigBundle) -> float:
    """d(h_R^2)/dW = -(2 mu/(1+mu)) h_R^2 f_S^2 f_C^2 / W."""
    return -2.0 * tb.mu / (1.0 + tb.mu) * tb.h_R**2 * tb.f_S**2 * tb.f_C**2 / tb.W


def d_fC2_dW(tb: TrigBundle) -> float:
    """d(f_C^2)/dW = -(2/W) h_R^2 f_S^2 f_C^2."""
    return -2.0 * tb.h_R**2 * tb.f_S**2 * tb.f_C**2 / tb.W


def d_fS2_dW(tb: TrigBundle) -> float:
    """d(f_S^2)/dW = +(2/W) h_R^2 f_S^2 f_C^2."""
    return 2.0 * tb.h_R**2 * tb.f_S**2 * tb.f_C**2 / tb.W


def d_fS_over_fC_dW(tb: TrigBundle) -> float:
    """d(f_S/f_C)/dW = (h_R^2/W) f_S/f_C."""
    return tb.h_R**2 / tb.W * tb.f_S / tb.f_C


def d_s_dW(tb: TrigBundle) -> float:
    """d(f_S/h_R)/dW = f_C^2 f_S / (W h_R)."""
    return tb.f_C**2 * tb.f_S / (tb.W * tb.h_R)
