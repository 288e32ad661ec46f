"""Spherical functions of X^(p,q) and their spectral derivatives.

phi_lambda^(p,q)(r) = F(rho - i lambda, rho + i lambda; n/2; -sinh^2(r/2)) is
the radial eigenfunction of the Laplacian normalized to 1 at the origin,
Delta phi = -(lambda^2 + rho^2) phi.  Its Euclidean counterpart is
psi_lambda(t) = cos(lambda t).  phi_{lambda,k} and psi_{lambda,k} denote k-th
lambda-derivatives.

Working caps: r <= 10 and |Im lambda| <= 50 (far beyond every certification
window used here); outside them a DomainError is raised.

The independent oracle ``phi_ode_oracle`` integrates the radial ODE

    u'' + (A'/A) u' = -(lambda^2 + rho^2) u,
    A'/A = (p+q)/2 coth(r/2) + q/2 tanh(r/2),

from a fourth-order Frobenius start at r0 = 1e-3 and never touches the
hypergeometric series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import _kernels
from .errors import DomainError, NonConvergenceError
from .geometry import SpaceParams, sphere_area_logderiv
from .hypergeom import DEFAULT_TOL, TERM_CAP, EvalReport, conjpair_report
from .jets import Jet, conv_trunc, w_of_t_jet

__all__ = [
    "RADIUS_CAP",
    "IM_LAMBDA_CAP",
    "K_CAP",
    "SpectralPoint",
    "phi",
    "phi_report",
    "phi_dk",
    "psi",
    "phi_ode_oracle",
    "phi_grid",
    "phi_radial_grid",
    "phi_lambda_jet",
    "phi_t_jet",
]

RADIUS_CAP = 10.0
IM_LAMBDA_CAP = 50.0
K_CAP = 4


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter lambda together with a derivative order k."""

    lam: complex
    k: int = 0

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise DomainError(f"derivative order must be a nonnegative integer, got {self.k}")
        if self.k > K_CAP:
            raise DomainError(f"derivative order {self.k} exceeds supported depth {K_CAP}")


def _as_lambda(s) -> tuple[complex, int]:
    if isinstance(s, SpectralPoint):
        return complex(s.lam), s.k
    return complex(s), 0


def _check_caps(lam: complex, r: float):
    if r < 0.0:
        raise DomainError(f"radius must be >= 0, got {r}")
    if r > RADIUS_CAP:
        raise DomainError(f"radius {r} exceeds working cap {RADIUS_CAP}")
    if abs(lam.imag) > IM_LAMBDA_CAP:
        raise DomainError(f"|Im lambda| = {abs(lam.imag)} exceeds cap {IM_LAMBDA_CAP}")


def _w_of_r(r: float) -> float:
    th = math.tanh(0.5 * r)
    return th * th


def _P_of(params: SpaceParams, lam: complex) -> complex:
    rho = params.rho_f
    P = rho * rho + lam * lam
    if P.imag == 0.0:
        P = complex(P.real, 0.0)
    return P


def phi_report(params: SpaceParams, lam: complex, r: float,
               tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP,
               escalate: bool = True, abs_tol: float = 0.0) -> EvalReport:
    """phi with series bookkeeping (terms used, tail estimate).

    By default the evaluation escalates to extended precision when series
    cancellation would leave est_error above tol * |value| (large r with
    large parameters), so the result is relatively accurate; escalate=False
    keeps the fast double-precision path with its honest absolute estimate.
    abs_tol > 0 additionally accepts any rung whose estimate falls below it;
    root polishing wants that, since relative accuracy has no meaning at a
    zero of phi (|phi_lambda(r)| <= 1 for real lambda, so an absolute floor
    is well scaled there).
    """
    lam = complex(lam)
    _check_caps(lam, r)
    if r == 0.0:
        return EvalReport(value=1.0 + 0.0j, terms_used=1, est_error=0.0)
    z = -math.sinh(0.5 * r) ** 2
    return conjpair_report(params.rho_f, lam, params.n / 2.0, z, tol, term_cap,
                           escalate, abs_tol)


def phi(params: SpaceParams, s, r: float, tol: float = DEFAULT_TOL,
        escalate: bool = True, abs_tol: float = 0.0) -> complex:
    """Spherical function phi_lambda^(p,q)(r); exactly 1 at r = 0.

    ``s`` may be a SpectralPoint with k = 0 or a bare (complex) number.
    Exactly real for real lambda, and exactly 1 for lambda = +-i rho.
    """
    lam, k = _as_lambda(s)
    if k != 0:
        raise DomainError("phi takes k = 0; use phi_dk for derivatives")
    return phi_report(params, lam, r, tol, escalate=escalate,
                      abs_tol=abs_tol).value


def phi_dk(params: SpaceParams, s, r: float, tol: float = DEFAULT_TOL) -> complex:
    """k-th lambda-derivative of phi at fixed r, via jet arithmetic in lambda.

    The series coefficients depend on lambda polynomially (through
    rho^2 + lambda^2 only), so lifting the recurrence to truncated Taylor
    jets differentiates the series term-wise and exactly.
    """
    lam, k = _as_lambda(s)
    if not 1 <= k <= K_CAP:
        raise DomainError(f"phi_dk needs 1 <= k <= {K_CAP}, got {k}")
    _check_caps(lam, r)
    jet = phi_lambda_jet(params, lam, r, k, tol)
    return complex(jet[k] * math.factorial(k))


def psi(s, t: float) -> complex:
    """psi_{lambda,k}(t) = d^k/dlambda^k cos(lambda t), closed form."""
    lam, k = _as_lambda(s)
    tk = float(t) ** k
    # d^k/dx^k cos = cos shifted by k*pi/2
    mode = k % 4
    x = lam * t
    if mode == 0:
        base = cmath.cos(x)
    elif mode == 1:
        base = -cmath.sin(x)
    elif mode == 2:
        base = -cmath.cos(x)
    else:
        base = cmath.sin(x)
    val = tk * base
    if lam.imag == 0.0 and val.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def phi_grid(params: SpaceParams, lams, r: float,
             tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP,
             escalate: bool = True, abs_tol: float = 0.0) -> np.ndarray:
    """phi over an array of spectral points at fixed r (hot path for scans).

    Exactly real entries for exactly real entries of ``lams``.  Entries whose
    fast-path error estimate exceeds tol * |value| are re-evaluated through
    the escalating scalar path (unless escalate=False), so grid and scalar
    evaluations agree.  abs_tol > 0 caps the escalation demand absolutely,
    as in phi_report.
    """
    lams = np.asarray(lams, dtype=np.complex128)
    if r < 0.0 or r > RADIUS_CAP:
        raise DomainError(f"radius {r} outside [0, {RADIUS_CAP}]")
    if lams.size == 0:
        return np.zeros(0, np.complex128)
    if np.any(np.abs(lams.imag) > IM_LAMBDA_CAP):
        raise DomainError(f"|Im lambda| exceeds cap {IM_LAMBDA_CAP}")
    if r == 0.0:
        return np.ones(lams.shape, np.complex128)
    rho = params.rho_f
    P = rho * rho + lams * lams
    w = _w_of_r(r)
    vals, terms, est, status = _kernels.conjpair_grid(
        2.0 * rho, P, params.n / 2.0, w, tol, term_cap)
    bad = int(np.count_nonzero(status))
    if bad:
        raise NonConvergenceError(
            f"{bad} of {lams.size} grid points hit the series cap {term_cap}",
            partial=vals, est_error=float(np.max(est)), terms=int(np.max(terms)))
    if escalate:
        flat_vals = vals.reshape(-1)
        flat_lams = lams.reshape(-1)
        est_flat = np.asarray(est).reshape(-1)
        flagged = np.flatnonzero((est_flat > tol * np.abs(flat_vals))
                                 & (est_flat > abs_tol))
        for i in flagged:
            flat_vals[i] = phi_report(params, complex(flat_lams[i]), r, tol,
                                      term_cap, abs_tol=abs_tol).value
    return vals


def phi_radial_grid(params: SpaceParams, lam: complex, rs,
                    tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP) -> np.ndarray:
    """phi at fixed lambda over an array of radii.

    The series coefficients are lambda-only, so they are generated once (to
    the depth the largest radius needs) and evaluated as a polynomial in
    w(r) = tanh^2(r/2) across the grid.
    """
    lam = complex(lam)
    rs = np.asarray(rs, dtype=np.float64)
    if rs.size == 0:
        return np.zeros(0, np.complex128)
    rmax = float(np.max(rs))
    if float(np.min(rs)) < 0.0:
        raise DomainError("radii must be >= 0")
    _check_caps(lam, rmax)
    rho = params.rho_f
    P = _P_of(params, lam)
    w = np.tanh(0.5 * rs)
    w = w * w
    d, status = _kernels.conjpair_coeffs(
        2.0 * rho, P, params.n / 2.0, float(np.max(w)), tol, term_cap)
    if status != 0:
        raise NonConvergenceError(
            f"coefficient generation hit the series cap {term_cap}",
            terms=len(d))
    return _kernels.poly_eval_grid(d, w, min(tol, 1e-13))


# ---------------------------------------------------------------------------
# lambda-jets through the series recurrence

def _jet_conjpair_coeff_stream(params: SpaceParams, lam: complex, order: int):
    """Generator of lambda-jets of the series coefficients d_m.

    Yields numpy arrays of length order+1 (Taylor coefficients in lambda
    about ``lam``).  The recurrence is the scalar one lifted coefficientwise;
    P(lambda) = rho^2 + lambda^2 is quadratic so its jet is exact.
    """
    rho = params.rho_f
    c = params.n / 2.0
    two_rho = 2.0 * rho
    K = order
    P = np.zeros(K + 1, np.complex128)
    P[0] = rho * rho + lam * lam
    if K >= 1:
        P[1] = 2.0 * lam
    if K >= 2:
        P[2] = 1.0
    d_prev = np.zeros(K + 1, np.complex128)
    d_prev[0] = 1.0
    yield d_prev
    d_cur = -P / c
    yield d_cur
    m = 1
    while True:
        shift = (two_rho - 1.0 - 2.0 * c) * m - 2.0 * m * (m - 1.0)
        A = P.copy()
        A[0] += shift
        num = conv_trunc(A, d_cur, K) + ((m - 1.0) * (m - 1.0 + c - two_rho)) * d_prev
        d_next = -num / ((m + 1.0) * (m + c))
        yield d_next
        d_prev, d_cur = d_cur, d_next
        m += 1


def phi_lambda_jet(params: SpaceParams, lam: complex, r: float, order: int,
                   tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP) -> np.ndarray:
    """Taylor coefficients in lambda of phi(params, ., r) about ``lam``.

    Entry j is phi^(j)/j! in the lambda variable, up to the given order.
    """
    lam = complex(lam)
    _check_caps(lam, r)
    if order < 0:
        raise DomainError("jet order must be >= 0")
    if r == 0.0:
        out = np.zeros(order + 1, np.complex128)
        out[0] = 1.0
        return out
    w = _w_of_r(r)
    qbar = min(1.05 * w, 0.5 * (1.0 + w))
    geo = qbar / (1.0 - qbar)
    stream = _jet_conjpair_coeff_stream(params, lam, order)
    S = next(stream).copy()  # d_0 jet, w^0
    wpow = 1.0
    prev1 = float(np.max(np.abs(S)))
    env = prev1
    streak = 0
    m = 0
    for d in stream:
        m += 1
        wpow *= w
        tau = d * wpow
        S += tau
        at = float(np.max(np.abs(tau)))
        env = max(at, qbar * env)  # term envelope, immune to beat troughs
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        # scale relative to the jet itself: the caller may amplify the
        # coefficients heavily (nested derivative operators), so an absolute
        # floor here would silently cost digits downstream
        scale = max(float(np.max(np.abs(S))), 1e-300)
        if m >= 6 and streak >= 3 and 2.0 * env * geo <= tol * scale:
            return S
        prev1 = at
        if m >= term_cap:
            raise NonConvergenceError(
                f"lambda-jet series cap {term_cap} reached", partial=S, terms=m)
    raise AssertionError("unreachable")


def phi_t_jet(params: SpaceParams, lam: complex, k: int, t0: float, order: int,
              tol: float = DEFAULT_TOL, term_cap: int = TERM_CAP) -> Jet:
    """Jet in t = cosh r of phi_{lambda,k} at a center t0 > 1.

    phi_{lambda,k} as a function of t is sum_m g_m w(t)^m with w = (t-1)/(t+1)
    and g_m the k-th lambda-derivative of the series coefficient d_m; the w
    jet has closed form and the powers are accumulated by jet products.
    """
    lam = complex(lam)
    if t0 <= 1.0:
        raise DomainError(f"need t0 > 1, got {t0}")
    if not 0 <= k <= K_CAP:
        raise DomainError(f"need 0 <= k <= {K_CAP}, got {k}")
    r0 = math.acosh(t0)
    _check_caps(lam, r0)
    fact_k = float(math.factorial(k))
    W = w_of_t_jet(t0, order)
    w0 = W.value.real
    qbar = min(1.05 * w0, 0.5 * (1.0 + w0))
    geo = qbar / (1.0 - qbar) if w0 > 0.0 else 0.0
    stream = _jet_conjpair_coeff_stream(params, lam, k)
    S = Jet.constant(0.0, t0, order)
    Wm = Jet.constant(1.0, t0, order)
    prev1 = 1.0
    env = 1.0
    streak = 0
    m = 0
    for d in stream:
        g = d[k] * fact_k
        tau = Wm * g
        S = S + tau
        at = float(np.max(np.abs(tau.coeffs))) if g != 0.0 else 0.0
        env = max(at, qbar * env)  # term envelope, immune to beat troughs
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        # relative to the jet scale, no absolute floor: the inverse-transform
        # operator multiplies these coefficients by large linear-factor
        # powers before differentiating, so every digit kept here counts
        scale = max(float(np.max(np.abs(S.coeffs))), 1e-300)
        if m >= 6 and streak >= 3 and 2.0 * env * geo <= tol * scale:
            return S
        prev1 = max(at, 1e-300)
        m += 1
        if m > term_cap:
            raise NonConvergenceError(
                f"t-jet series cap {term_cap} reached", partial=S, terms=m)
        Wm = Wm * W
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# independent ODE oracle

def phi_ode_oracle(params: SpaceParams, lam: complex, r: float,
                   steps: int = 0, rtol: float = 1e-11) -> complex:
    """Integrate the radial eigenfunction ODE; independent of the series.

    Fourth-order Frobenius start at r0 = 1e-3:
    u = 1 + c2 r^2 + c4 r^4 with mu^2 = lambda^2 + rho^2,
    c2 = -mu^2/(2n), c4 = mu^2 (mu^2 + (n-1)/6 + q/2) / (8 n (n+2)).
    ``steps`` > 0 caps the integrator step at (r - r0)/steps.

    The solution decays like exp(-rho r), so a fixed absolute tolerance
    would swamp it at large r; the equation is linear, so integration
    proceeds in unit segments, renormalizing the state after each and
    reapplying the accumulated factor at the end (error control stays
    relative to the local solution size throughout).
    """
    lam = complex(lam)
    if r <= 0.0:
        raise DomainError(f"need r > 0, got {r}")
    _check_caps(lam, r)
    n = params.n
    q = params.q
    rho = params.rho_f
    mu2 = lam * lam + rho * rho
    r0 = 1e-3
    c2 = -mu2 / (2.0 * n)
    c4 = mu2 * (mu2 + (n - 1.0) / 6.0 + q / 2.0) / (8.0 * n * (n + 2.0))
    if r <= r0:
        return complex(1.0 + c2 * r * r + c4 * r ** 4)
    u0 = 1.0 + c2 * r0 * r0 + c4 * r0 ** 4
    v0 = 2.0 * c2 * r0 + 4.0 * c4 * r0 ** 3

    def rhs(t, y):
        return [y[1], -mu2 * y[0] - sphere_area_logderiv(params, t) * y[1]]

    kwargs = {}
    if steps > 0:
        kwargs["max_step"] = (r - r0) / steps
    left = r0
    y = np.array([u0, v0], dtype=np.complex128)
    scale_acc = 1.0
    while left < r:
        right = min(left + 1.0, r)
        sol = solve_ivp(rhs, (left, right), y, method="DOP853",
                        rtol=rtol, atol=1e-290, **kwargs)
        if not sol.success:
            raise NonConvergenceError(f"ODE integration failed: {sol.message}")
        y = sol.y[:, -1]
        seg_scale = float(max(abs(y[0]), abs(y[1]), 1e-300))
        y = y / seg_scale
        scale_acc *= seg_scale
        left = right
    return complex(y[0] * scale_acc)
