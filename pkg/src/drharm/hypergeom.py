"""Gauss hypergeometric evaluation on the negative real axis.

Covers exactly the regime the spherical-function calculus needs: parameters
a = rho - i lambda, b = rho + i lambda (so a + b = 2 rho is real), c = n/2 > 0,
and argument z = -sinh^2(r/2) <= 0.  Everything is routed through the Pfaff
transformation

    F(a, b; c; z) = (1 - z)^(-a) F(a, c - b; c; w),   w = z / (z - 1),

which maps the unbounded argument into w = tanh^2(r/2) in [0, 1) where the
Maclaurin series converges.  Connection formulas at w -> 1 would hit the
logarithmic case c - a - b = (1 - q)/2 and are out of scope; the radius cap
keeps w <= tanh^2(5) ~ 0.99982.

``f21_neg_conjpair`` sums a recurrence whose coefficients involve lambda only
through a*b = rho^2 + lambda^2, so real and purely imaginary spectral
parameters yield exactly real results (no cancellation of conjugate parts).

Large r with large parameters is a cancellation regime: the summed value
decays like exp(-2 rho * r/2) while individual terms stay O(1), so the
roundoff floor eps * (2 + m/4) * sum|t_k| can exceed tol * |value| by many
orders.  When that happens (and escalation is not opted out), the same
recurrence is re-summed in double-double arithmetic (~31 digits, ~10x cost),
and if even that cannot certify tol, in mpmath with a working precision
sized to the digits lost, restoring a relatively accurate value with an
honest estimate.  This matters where a large prefactor multiplies the value
afterwards (the ball transform closed form) and for uniform relative
accuracy guarantees.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from . import _kernels
from .errors import DomainError, NonConvergenceError

_EPS = sys.float_info.epsilon

__all__ = [
    "DEFAULT_TOL",
    "TERM_CAP",
    "HypArgs",
    "EvalReport",
    "f21_neg",
    "f21_neg_conjpair",
    "conjpair_report",
]

DEFAULT_TOL = 1e-12
# sized for the radius cap: at w = tanh^2(5) the envelope decays like
# (1-w)/2 ~ 9e-5 per term, so the fast path needs ~4.1e5 terms and the
# escalated rungs, which must push the tail further down when the value
# sits near a spectral zero, need up to ~1.2e6
TERM_CAP = 1500000
MIN_TOL = 1e-14
_MP_DPS_CAP = 140


@dataclass(frozen=True)
class HypArgs:
    """Arguments (a, b; c; z) restricted to c > 0, z <= 0."""

    a: complex
    b: complex
    c: float
    z: float

    def __post_init__(self):
        if not (self.c > 0):
            raise DomainError(f"need c > 0, got c = {self.c}")
        if self.z > 0:
            raise DomainError(f"need z <= 0, got z = {self.z}")
        if not (math.isfinite(self.c) and math.isfinite(self.z)):
            raise DomainError("c and z must be finite")


@dataclass(frozen=True)
class EvalReport:
    """Value plus the bookkeeping of the series that produced it."""

    value: complex
    terms_used: int
    est_error: float


def _check_tol(tol):
    if not (tol >= MIN_TOL):
        raise DomainError(f"tol must be >= {MIN_TOL}, got {tol}")


def f21_neg(args: HypArgs, tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP) -> EvalReport:
    """F(a, b; c; z) for z <= 0 via the Pfaff series.

    The error estimate bounds the series tail geometrically once three
    consecutive term ratios contract below the safeguarded ratio, and adds a
    roundoff allowance; it is measured against the returned value.

    Raises NonConvergenceError (carrying the partial value) if the term cap
    is reached first, DomainError for z > 0 or tol below 1e-14.
    """
    _check_tol(tol)
    w = args.z / (args.z - 1.0) if args.z != 0.0 else 0.0
    s, terms, est, status = _kernels.f21_series(args.a, args.c - args.b, args.c,
                                                w, tol, term_cap)
    # principal branch, 1 - z >= 1 so the log is real
    pref = cmath.exp(-args.a * math.log1p(-args.z))
    value = pref * s
    est_total = abs(pref) * est + 4.0 * _EPS * abs(value)
    if status != 0:
        raise NonConvergenceError(
            f"series cap {term_cap} reached (est_error {est_total:.3g})",
            partial=value, est_error=est_total, terms=terms)
    return EvalReport(value=value, terms_used=terms, est_error=est_total)


def _conjpair_series_mp(two_rho: float, P: complex, c: float, w: float,
                        rel_tol: float, dps: int, cap: int,
                        abs_tol: float = 0.0):
    """The kernel's d-recurrence re-summed in mpmath (cancellation rescue).

    Same recurrence, same safeguarded stopping rule, but the tail target is
    relative to the (cancelled) running sum rather than max(|sum|, 1), since
    the entire point is relative accuracy of a small value (abs_tol > 0 adds
    an absolute stopping floor for callers probing near a zero).  Term
    magnitudes use the cheap 1-norm |Re| + |Im| (within sqrt(2) of the
    2-norm, absorbed by the safeguard factors); the tail seed is the
    envelope cap max(|t_m|, qbar * env), immune to the beat troughs of
    oscillating term magnitudes.  Returns (value, est_error, terms, status).
    """
    import mpmath as mp

    real_case = P.imag == 0.0
    with mp.workdps(dps):
        wm = mp.mpf(w)
        cm = mp.mpf(c)
        trm = mp.mpf(two_rho)
        Pm = mp.mpf(P.real) if real_case else mp.mpc(P)
        one = mp.mpf(1)
        qbar = min(mp.mpf("1.05") * wm, (one + wm) / 2)
        geo = qbar / (one - qbar)
        # resolution floor: cannot resolve below the working precision
        floor = mp.mpf(10) ** (-(dps - 8))

        def nrm(x):
            return abs(x) if real_case else abs(x.real) + abs(x.imag)

        d_prev = Pm * 0 + 1
        d_cur = -Pm / cm
        s = Pm * 0 + 1
        absum = one
        env = one
        prev1 = one
        wpow = wm
        m = 1
        tail = one
        status = 1
        streak = 0
        zero_run = 0
        while m <= cap:
            tau = d_cur * wpow
            s += tau
            at = nrm(tau)
            absum += at
            env *= qbar
            if at > env:
                env = at
            if at <= qbar * prev1:
                streak += 1
            else:
                streak = 0
            if at == 0:
                zero_run += 1
                if zero_run >= 2:
                    tail = mp.mpf(0)
                    status = 0
                    m += 1
                    break
            else:
                zero_run = 0
            prev1 = at
            if m >= 10 and streak >= 3:
                tail = 2 * env * geo
                if tail <= rel_tol * nrm(s) or tail <= floor * absum \
                        or (abs_tol > 0.0 and tail <= 0.5 * abs_tol):
                    status = 0
                    m += 1
                    break
            num = (Pm + (trm - 1 - 2 * cm) * m - 2 * m * (m - 1)) * d_cur \
                + ((m - 1) * (m - 1 + cm - trm)) * d_prev
            d_prev = d_cur
            d_cur = -num / ((m + 1) * (m + cm))
            wpow *= wm
            m += 1
        value = complex(s)
        est = float(tail + floor * absum) + 2.0 * _EPS * abs(value)
    return value, est, m, status


def conjpair_report(rho: float, lam: complex, c: float, z: float,
                    tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP,
                    escalate: bool = True, abs_tol: float = 0.0) -> EvalReport:
    """Like f21_neg_conjpair but returning the full evaluation report.

    If the double-precision pass cannot certify tol relative accuracy
    (est_error > tol * |value|, the cancellation regime) and ``escalate`` is
    true, the identical recurrence is re-summed in double-double arithmetic
    (~31 digits, covering all but the deepest cancellations at ~10x the fast
    path's cost) and, if even that cannot certify, in mpmath at a working
    precision sized to the digits lost.  ``escalate=False`` keeps the fast
    path and its honest (absolute) error estimate for scan-grade callers.

    ``abs_tol`` (when positive) accepts any rung once est_error falls below
    it.  Relative accuracy is unattainable at a zero of the function, so
    root-polishing callers would otherwise ride the ladder to its cap; they
    know their function's natural scale and can cap the demand absolutely.
    """
    _check_tol(tol)
    if z > 0:
        raise DomainError(f"need z <= 0, got z = {z}")
    if not (c > 0):
        raise DomainError(f"need c > 0, got c = {c}")
    lam = complex(lam)
    P = rho * rho + lam * lam
    if P.imag == 0.0:
        P = complex(P.real, 0.0)  # drop -0.0 imaginary parts
    w = z / (z - 1.0) if z != 0.0 else 0.0
    s, terms, est, status = _kernels.conjpair_series(2.0 * rho, P, c, w, tol, term_cap)
    if status != 0:
        raise NonConvergenceError(
            f"series cap {term_cap} reached (est_error {est:.3g})",
            partial=s, est_error=est, terms=terms)
    if escalate and est > tol * abs(s) and not (0.0 < abs_tol and est <= abs_tol):
        value_dd, terms_dd, est_dd, status_dd = _kernels.conjpair_series_dd(
            2.0 * rho, P, c, w, 0.25 * tol, abs_tol, term_cap)
        if status_dd == 0:
            est_dd += 2.0 * _EPS * abs(value_dd)  # collapse to double
            if est_dd <= tol * max(abs(value_dd), 1e-300) or \
                    (0.0 < abs_tol and est_dd <= abs_tol):
                return EvalReport(value=value_dd, terms_used=terms_dd,
                                  est_error=est_dd)
        scale = max(abs(s), 1e-300)
        lost = math.log10(max(est, 1e-300) / (_EPS * scale))
        extra = 0
        while True:
            dps = min(_MP_DPS_CAP, 24 + max(0, int(lost)) + extra)
            value, est_mp, terms_mp, status_mp = _conjpair_series_mp(
                2.0 * rho, P, c, w, 0.25 * tol, dps, term_cap, abs_tol)
            if status_mp != 0:
                raise NonConvergenceError(
                    f"series cap {term_cap} reached in extended precision",
                    partial=value, est_error=est_mp, terms=terms_mp)
            if est_mp <= tol * max(abs(value), 1e-300) or \
                    (0.0 < abs_tol and est_mp <= abs_tol) or dps >= _MP_DPS_CAP:
                return EvalReport(value=value, terms_used=terms_mp,
                                  est_error=est_mp)
            extra += 30
    return EvalReport(value=s, terms_used=terms, est_error=est)


def f21_neg_conjpair(rho: float, lam: complex, c: float, z: float,
                     tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP,
                     escalate: bool = True) -> complex:
    """F(rho - i lam, rho + i lam; c; z) for z <= 0.

    Sums the recurrence in w = z/(z-1) whose coefficients see lambda only
    through rho^2 + lambda^2, so the imaginary part is exactly zero for real
    lambda, and lam = i rho returns exactly 1 (the series terminates at the
    constant term).  Agrees with f21_neg at the same parameters to the
    requested tolerance.
    """
    return conjpair_report(rho, lam, c, z, tol, term_cap, escalate).value
