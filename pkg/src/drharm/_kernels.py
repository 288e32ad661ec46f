"""Series-summation kernels, optionally JIT-compiled.

Everything here is a tight loop over hypergeometric-type series terms; these
are the hot paths (zero scans evaluate them on grids of thousands of spectral
points, with up to ~2e5 terms each near the radius cap).  When numba is
importable and the environment variable DRHARM_DISABLE_NUMBA is not set to a
truthy value, the scalar kernels are compiled with @njit and grids loop over
the compiled scalars; otherwise vectorized numpy fallbacks are used.  The two
paths implement the same recurrences and stopping rules; results are
reproducible bit-for-bit within a path, and agree to ~1e-13 across paths.

Series conventions
------------------
All evaluation happens in the variable w = z / (z - 1) in [0, 1) (the image
of z = -sinh^2(r/2) under the Pfaff substitution, i.e. w = tanh^2(r/2)):

* ``f21_series(alpha, beta, c, w)`` sums sum_k (alpha)_k (beta)_k / ((c)_k k!) w^k,
  the Gauss series in w; the caller supplies alpha = a, beta = c - b and the
  Pfaff prefactor (1-z)^(-a) itself.
* ``conjpair_series(two_rho, P, c, w)`` sums G(w) = sum_m d_m w^m where G
  solves the hypergeometric equation transplanted to w, with a + b = two_rho
  and a*b = P as the only appearances of (a, b):

      (m+1)(m+c) d_{m+1} = -[P + m(two_rho - 1 - 2c) - 2m(m-1)] d_m
                            - (m-1)(m-1+c-two_rho) d_{m-1},
      d_0 = 1,  d_1 = -P/c.

  Coefficients are real whenever P is real, which covers both real and purely
  imaginary spectral parameters; P = 0 terminates the series at d_0 exactly.

Stopping rule: the tail is bounded by 2 * env * qbar/(1-qbar), where env is
the envelope cap env_m = max(|t_m|, qbar * env_{m-1}) and qbar =
min(1.05 w, (1+w)/2) < 1 safeguards the limiting term ratio.  env cannot dip
into the troughs of the term-magnitude beats (|t_m| oscillates with an
m-dependent period that no fixed-size look-back window can cover), and it is
a valid envelope bound whenever the true envelope contracts at qbar or
better, which is the same polynomial-times-w^m condition the geometric tail
itself needs; a streak of three consecutive contracting terms gates the
check.  The returned error estimate adds a roundoff term
eps * (2 + m/4) * sum |t_k| (summation is compensated, but per-step rounding
in the recurrence and in the running power w^m is amplified across the m
terms summed, so a plain 2 eps sum|t| bound is dishonest for the ~1e4-term
sums near w -> 1; the m/4 factor was sized against high-precision references
with >10x margin).  Status 0 means converged, 1 means the term cap was hit
(the partial sum and its tail estimate are still returned).  Two consecutive
exactly-zero terms terminate a three-term recurrence for good, so degenerate
cases (P = 0, polynomial cases of the Gauss series) finish exactly.

``conjpair_series_dd`` runs the same recurrence for real P in double-double
arithmetic (~31 significant digits, compensated primitives after Dekker and
the QD library); it is the cheap escalation rung for the cancellation regime
where the double-precision sum loses most of its digits, costing ~10x a
double-path call instead of the ~1000x of a big-float rerun.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "ENV_FLAG",
    "f21_series",
    "conjpair_series",
    "conjpair_series_dd",
    "conjpair_grid",
    "conjpair_coeffs",
    "poly_eval_grid",
]

ENV_FLAG = "DRHARM_DISABLE_NUMBA"

_EPS = float(np.finfo(np.float64).eps)

USING_NUMBA = False
if os.environ.get(ENV_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:
        USING_NUMBA = False


def _f21_series_scalar(alpha, beta, c, w, tol, cap):
    if w == 0.0:
        return 1.0 + 0.0j, 1, 0.0, 0
    qbar = 1.05 * w
    half = 0.5 * (1.0 + w)
    if half < qbar:
        qbar = half
    geo = qbar / (1.0 - qbar)
    s = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    t = 1.0 + 0.0j
    absum = 1.0
    env = 1.0
    prev1 = 1.0
    streak = 0
    zero_run = 0
    k = 0
    at = 1.0
    while k < cap:
        t = t * ((alpha + k) * (beta + k) / ((c + k) * (k + 1.0)) * w)
        y = t - comp
        tmp = s + y
        comp = (tmp - s) - y
        s = tmp
        at = abs(t)
        absum += at
        k += 1
        env *= qbar
        if at > env:
            env = at
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        if at == 0.0:
            zero_run += 1
            if zero_run >= 2:
                return s, k + 1, _EPS * absum * (2.0 + 0.25 * k), 0
        else:
            zero_run = 0
        if k >= 6 and streak >= 3:
            tail = 2.0 * env * geo
            scale = abs(s)
            if scale < 1.0:
                scale = 1.0
            if tail <= tol * scale:
                return s, k + 1, tail + _EPS * absum * (2.0 + 0.25 * k), 0
        prev1 = at
    return s, cap + 1, 2.0 * env * geo + _EPS * absum * (2.0 + 0.25 * cap), 1


def _conjpair_series_scalar(two_rho, P, c, w, tol, cap):
    if w == 0.0:
        return 1.0 + 0.0j, 1, 0.0, 0
    qbar = 1.05 * w
    half = 0.5 * (1.0 + w)
    if half < qbar:
        qbar = half
    geo = qbar / (1.0 - qbar)
    d_prev = 1.0 + 0.0j
    d_cur = -P / c
    s = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    absum = 1.0
    env = 1.0
    prev1 = 1.0
    streak = 0
    zero_run = 0
    wpow = w
    m = 1
    at = 1.0
    while m <= cap:
        tau = d_cur * wpow
        y = tau - comp
        tmp = s + y
        comp = (tmp - s) - y
        s = tmp
        at = abs(tau)
        absum += at
        env *= qbar
        if at > env:
            env = at
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        if at == 0.0:
            zero_run += 1
            if zero_run >= 2:
                return s, m + 1, _EPS * absum * (2.0 + 0.25 * m), 0
        else:
            zero_run = 0
        if m >= 6 and streak >= 3:
            tail = 2.0 * env * geo
            scale = abs(s)
            if scale < 1.0:
                scale = 1.0
            if tail <= tol * scale:
                return s, m + 1, tail + _EPS * absum * (2.0 + 0.25 * m), 0
        num = (P + (two_rho - 1.0 - 2.0 * c) * m - 2.0 * m * (m - 1.0)) * d_cur \
            + ((m - 1.0) * (m - 1.0 + c - two_rho)) * d_prev
        d_next = -num / ((m + 1.0) * (m + c))
        d_prev = d_cur
        d_cur = d_next
        wpow *= w
        prev1 = at
        m += 1
    return s, cap + 1, 2.0 * env * geo + _EPS * absum * (2.0 + 0.25 * cap), 1


# --- double-double primitives (Dekker splitting; QD-style add/mul/div) ---

_DD_SPLIT = 134217729.0  # 2^27 + 1
_DD_EPS = 4.93038065763132e-32  # 2^-104, unit roundoff of a dd value


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _DD_SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _DD_SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    t, f = _two_sum(al, bl)
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _quick_two_sum(p, e)


def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    th, tl = _dd_mul(bh, bl, q1, 0.0)
    rh, rl = _dd_add(ah, al, -th, -tl)
    q2 = rh / bh
    th, tl = _dd_mul(bh, bl, q2, 0.0)
    rh, rl = _dd_add(rh, rl, -th, -tl)
    q3 = rh / bh
    s, e = _quick_two_sum(q1, q2)
    return _dd_add(s, e, q3, 0.0)


def _conjpair_series_dd(two_rho, P, c, w, rel_tol, abs_tol, cap):
    """Conjugate-pair recurrence for real P in double-double arithmetic.

    Returns (value_hi, value_lo, terms, est, status).  The stopping target is
    relative to the current partial sum (this rung exists for the
    cancellation regime, where max(|s|, 1) scaling would quit early), with
    abs_tol as an optional absolute floor so callers probing near a zero of
    the function do not force the tail all the way down to the dd roundoff
    level.  est covers the envelope-capped geometric tail plus m-amplified
    dd roundoff;
    the caller adds the double rounding of hi+lo when collapsing the result.
    """
    if w == 0.0:
        return 1.0, 0.0, 1, 0.0, 0
    qbar = 1.05 * w
    half = 0.5 * (1.0 + w)
    if half < qbar:
        qbar = half
    geo = qbar / (1.0 - qbar)
    # exact half-integer shifts of the recurrence coefficients
    a1 = two_rho - 1.0 - 2.0 * c
    b1 = c - two_rho
    d_ph, d_pl = 1.0, 0.0
    d_ch, d_cl = _dd_div(-P, 0.0, c, 0.0)
    s_h, s_l = 1.0, 0.0
    wp_h, wp_l = w, 0.0
    absum = 1.0
    env = 1.0
    prev1 = 1.0
    streak = 0
    zero_run = 0
    m = 1
    at = 1.0
    while m <= cap:
        t_h, t_l = _dd_mul(d_ch, d_cl, wp_h, wp_l)
        s_h, s_l = _dd_add(s_h, s_l, t_h, t_l)
        at = abs(t_h)
        absum += at
        env *= qbar
        if at > env:
            env = at
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        if at == 0.0:
            zero_run += 1
            if zero_run >= 2:
                return s_h, s_l, m + 1, _DD_EPS * absum * (2.0 + 0.25 * m), 0
        else:
            zero_run = 0
        if m >= 10 and streak >= 3:
            tail = 2.0 * env * geo
            round_err = _DD_EPS * absum * (2.0 + 0.25 * m)
            if tail <= rel_tol * abs(s_h) or tail <= round_err \
                    or tail <= 0.5 * abs_tol:
                return s_h, s_l, m + 1, tail + round_err, 0
        # coefficients assembled exactly in dd (m-polynomials of exact inputs)
        fm = float(m)
        ca_h, ca_l = _two_prod(a1, fm)
        ca_h, ca_l = _dd_add(ca_h, ca_l, P, 0.0)
        t_h, t_l = _two_prod(-2.0 * fm, fm - 1.0)
        ca_h, ca_l = _dd_add(ca_h, ca_l, t_h, t_l)
        cb_h, cb_l = _two_prod(fm - 1.0, (fm - 1.0) + b1)
        n_h, n_l = _dd_mul(ca_h, ca_l, d_ch, d_cl)
        t_h, t_l = _dd_mul(cb_h, cb_l, d_ph, d_pl)
        n_h, n_l = _dd_add(n_h, n_l, t_h, t_l)
        de_h, de_l = _two_prod(fm + 1.0, fm + c)
        d_nh, d_nl = _dd_div(-n_h, -n_l, de_h, de_l)
        d_ph, d_pl = d_ch, d_cl
        d_ch, d_cl = d_nh, d_nl
        wp_h, wp_l = _dd_mul(wp_h, wp_l, w, 0.0)
        prev1 = at
        m += 1
    return (s_h, s_l, cap + 1,
            2.0 * env * geo + _DD_EPS * absum * (2.0 + 0.25 * cap), 1)


def _conjpair_series_ddc(two_rho, P_re, P_im, c, w, rel_tol, abs_tol, cap):
    """Complex-P variant of the dd rung (components as dd pairs).

    Term magnitudes use the 1-norm |Re| + |Im|, matching the big-float rung,
    so the two escalation paths share their stopping behaviour.  Returns
    (re_hi, re_lo, im_hi, im_lo, terms, est, status).
    """
    if w == 0.0:
        return 1.0, 0.0, 0.0, 0.0, 1, 0.0, 0
    qbar = 1.05 * w
    half = 0.5 * (1.0 + w)
    if half < qbar:
        qbar = half
    geo = qbar / (1.0 - qbar)
    a1 = two_rho - 1.0 - 2.0 * c
    b1 = c - two_rho
    dpr_h, dpr_l = 1.0, 0.0
    dpi_h, dpi_l = 0.0, 0.0
    dcr_h, dcr_l = _dd_div(-P_re, 0.0, c, 0.0)
    dci_h, dci_l = _dd_div(-P_im, 0.0, c, 0.0)
    sr_h, sr_l = 1.0, 0.0
    si_h, si_l = 0.0, 0.0
    wp_h, wp_l = w, 0.0
    absum = 1.0
    env = 1.0
    prev1 = 1.0
    streak = 0
    zero_run = 0
    m = 1
    at = 1.0
    while m <= cap:
        tr_h, tr_l = _dd_mul(dcr_h, dcr_l, wp_h, wp_l)
        ti_h, ti_l = _dd_mul(dci_h, dci_l, wp_h, wp_l)
        sr_h, sr_l = _dd_add(sr_h, sr_l, tr_h, tr_l)
        si_h, si_l = _dd_add(si_h, si_l, ti_h, ti_l)
        at = abs(tr_h) + abs(ti_h)
        absum += at
        env *= qbar
        if at > env:
            env = at
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        if at == 0.0:
            zero_run += 1
            if zero_run >= 2:
                return (sr_h, sr_l, si_h, si_l, m + 1,
                        _DD_EPS * absum * (2.0 + 0.25 * m), 0)
        else:
            zero_run = 0
        if m >= 10 and streak >= 3:
            tail = 2.0 * env * geo
            round_err = _DD_EPS * absum * (2.0 + 0.25 * m)
            mag = abs(sr_h) + abs(si_h)
            if tail <= rel_tol * mag or tail <= round_err \
                    or tail <= 0.5 * abs_tol:
                return sr_h, sr_l, si_h, si_l, m + 1, tail + round_err, 0
        fm = float(m)
        ca_h, ca_l = _two_prod(a1, fm)
        ca_h, ca_l = _dd_add(ca_h, ca_l, P_re, 0.0)
        t_h, t_l = _two_prod(-2.0 * fm, fm - 1.0)
        ca_h, ca_l = _dd_add(ca_h, ca_l, t_h, t_l)
        cb_h, cb_l = _two_prod(fm - 1.0, (fm - 1.0) + b1)
        # num = (ca + i P_im) * d_cur + cb * d_prev, all coefficients dd
        nr_h, nr_l = _dd_mul(ca_h, ca_l, dcr_h, dcr_l)
        t_h, t_l = _dd_mul(P_im, 0.0, dci_h, dci_l)
        nr_h, nr_l = _dd_add(nr_h, nr_l, -t_h, -t_l)
        t_h, t_l = _dd_mul(cb_h, cb_l, dpr_h, dpr_l)
        nr_h, nr_l = _dd_add(nr_h, nr_l, t_h, t_l)
        ni_h, ni_l = _dd_mul(ca_h, ca_l, dci_h, dci_l)
        t_h, t_l = _dd_mul(P_im, 0.0, dcr_h, dcr_l)
        ni_h, ni_l = _dd_add(ni_h, ni_l, t_h, t_l)
        t_h, t_l = _dd_mul(cb_h, cb_l, dpi_h, dpi_l)
        ni_h, ni_l = _dd_add(ni_h, ni_l, t_h, t_l)
        de_h, de_l = _two_prod(fm + 1.0, fm + c)
        dpr_h, dpr_l = dcr_h, dcr_l
        dpi_h, dpi_l = dci_h, dci_l
        dcr_h, dcr_l = _dd_div(-nr_h, -nr_l, de_h, de_l)
        dci_h, dci_l = _dd_div(-ni_h, -ni_l, de_h, de_l)
        wp_h, wp_l = _dd_mul(wp_h, wp_l, w, 0.0)
        prev1 = at
        m += 1
    return (sr_h, sr_l, si_h, si_l, cap + 1,
            2.0 * env * geo + _DD_EPS * absum * (2.0 + 0.25 * cap), 1)


def _conjpair_coeffs_scalar(two_rho, P, c, w_max, tol, cap):
    """Coefficients d_0..d_M sufficient to evaluate G at any w <= w_max."""
    d = np.empty(cap + 2, np.complex128)
    d[0] = 1.0 + 0.0j
    if w_max == 0.0:
        return d[:1].copy(), 0
    qbar = 1.05 * w_max
    half = 0.5 * (1.0 + w_max)
    if half < qbar:
        qbar = half
    geo = qbar / (1.0 - qbar)
    d[1] = -P / c
    s = 1.0 + 0.0j + d[1] * w_max
    env = 1.0
    prev1 = 1.0
    streak = 0
    zero_run = 0
    wpow = w_max
    m = 1
    while m <= cap:
        at = abs(d[m]) * wpow
        env *= qbar
        if at > env:
            env = at
        if at <= qbar * prev1:
            streak += 1
        else:
            streak = 0
        if at == 0.0:
            zero_run += 1
            if zero_run >= 2:
                return d[: m + 1].copy(), 0
        else:
            zero_run = 0
        if m >= 6 and streak >= 3:
            tail = 2.0 * env * geo
            scale = abs(s)
            if scale < 1.0:
                scale = 1.0
            if tail <= tol * scale:
                return d[: m + 1].copy(), 0
        num = (P + (two_rho - 1.0 - 2.0 * c) * m - 2.0 * m * (m - 1.0)) * d[m] \
            + ((m - 1.0) * (m - 1.0 + c - two_rho)) * d[m - 1]
        d[m + 1] = -num / ((m + 1.0) * (m + c))
        wpow *= w_max
        s = s + d[m + 1] * wpow
        prev1 = at
        m += 1
    return d[: cap + 1].copy(), 1


def _poly_eval_scalar(d, w, tol):
    """sum_m d_m w^m with an early geometric-tail exit; 0 <= w < 1."""
    s = d[0]
    if w == 0.0:
        return s
    comp = 0.0 + 0.0j
    geo = w / (1.0 - w)
    wpow = 1.0
    small = 0
    for m in range(1, d.shape[0]):
        wpow *= w
        tau = d[m] * wpow
        y = tau - comp
        tmp = s + y
        comp = (tmp - s) - y
        s = tmp
        dbar = abs(d[m])
        a1 = abs(d[m - 1])
        if a1 > dbar:
            dbar = a1
        if m >= 2:
            a2 = abs(d[m - 2])
            if a2 > dbar:
                dbar = a2
        scale = abs(s)
        if scale < 1.0:
            scale = 1.0
        if dbar * wpow * geo <= tol * scale:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return s


if USING_NUMBA:
    _f21_series_jit = njit(cache=True)(_f21_series_scalar)
    _conjpair_series_jit = njit(cache=True)(_conjpair_series_scalar)
    _conjpair_coeffs_jit = njit(cache=True)(_conjpair_coeffs_scalar)
    _poly_eval_scalar_jit = njit(cache=True)(_poly_eval_scalar)
    # rebind the dd primitives so the compiled kernel resolves them as
    # compiled callees (they stay callable from plain python either way)
    _two_sum = njit(cache=True)(_two_sum)
    _quick_two_sum = njit(cache=True)(_quick_two_sum)
    _two_prod = njit(cache=True)(_two_prod)
    _dd_add = njit(cache=True)(_dd_add)
    _dd_mul = njit(cache=True)(_dd_mul)
    _dd_div = njit(cache=True)(_dd_div)
    _conjpair_series_dd_jit = njit(cache=True)(_conjpair_series_dd)
    _conjpair_series_ddc_jit = njit(cache=True)(_conjpair_series_ddc)

    @njit(cache=True)
    def _conjpair_grid_jit(two_rho, P, c, w, tol, cap):
        npts = P.shape[0]
        vals = np.empty(npts, np.complex128)
        terms = np.empty(npts, np.int64)
        est = np.empty(npts, np.float64)
        status = np.empty(npts, np.int64)
        for i in range(npts):
            v, t, e, st = _conjpair_series_jit(two_rho, P[i], c, w, tol, cap)
            vals[i] = v
            terms[i] = t
            est[i] = e
            status[i] = st
        return vals, terms, est, status

    @njit(cache=True)
    def _poly_eval_grid_jit(d, warr, tol):
        out = np.empty(warr.shape[0], np.complex128)
        for i in range(warr.shape[0]):
            out[i] = _poly_eval_scalar_jit(d, warr[i], tol)
        return out


def _conjpair_grid_numpy(two_rho, P, c, w, tol, cap):
    """Vectorized mask-frozen variant of the conjugate-pair recurrence."""
    P = np.ascontiguousarray(P, dtype=np.complex128)
    npts = P.shape[0]
    vals = np.ones(npts, np.complex128)
    terms = np.full(npts, cap + 1, np.int64)
    est = np.zeros(npts, np.float64)
    status = np.ones(npts, np.int64)
    if w == 0.0:
        terms[:] = 1
        status[:] = 0
        return vals, terms, est, status
    qbar = min(1.05 * w, 0.5 * (1.0 + w))
    geo = qbar / (1.0 - qbar)
    d_prev = np.ones(npts, np.complex128)
    d_cur = -P / c
    comp = np.zeros(npts, np.complex128)
    absum = np.ones(npts, np.float64)
    env = np.ones(npts, np.float64)
    prev1 = np.ones(npts, np.float64)
    streak = np.zeros(npts, np.int64)
    zero_run = np.zeros(npts, np.int64)
    active = np.ones(npts, bool)
    wpow = w
    m = 1
    while m <= cap and active.any():
        tau = d_cur * wpow
        y = tau - comp
        tmp = vals + y
        new_comp = (tmp - vals) - y
        at = np.abs(tau)
        vals = np.where(active, tmp, vals)
        comp = np.where(active, new_comp, comp)
        absum = np.where(active, absum + at, absum)
        env = np.where(active, np.maximum(env * qbar, at), env)
        contract = at <= qbar * prev1
        streak = np.where(active & contract, streak + 1, np.where(active, 0, streak))
        is_zero = at == 0.0
        zero_run = np.where(active & is_zero, zero_run + 1,
                            np.where(active, 0, zero_run))
        tail = 2.0 * env * geo
        scale = np.maximum(np.abs(vals), 1.0)
        done_exact = active & (zero_run >= 2)
        done_tol = active & (m >= 6) & (streak >= 3) & (tail <= tol * scale)
        done = done_exact | done_tol
        if done.any():
            terms[done] = m + 1
            est[done] = np.where(done_exact[done], 0.0, tail[done]) \
                + _EPS * absum[done] * (2.0 + 0.25 * m)
            status[done] = 0
            active &= ~done
        num = (P + (two_rho - 1.0 - 2.0 * c) * m - 2.0 * m * (m - 1.0)) * d_cur \
            + ((m - 1.0) * (m - 1.0 + c - two_rho)) * d_prev
        d_next = -num / ((m + 1.0) * (m + c))
        d_prev = np.where(active, d_cur, d_prev)
        d_cur = np.where(active, d_next, d_cur)
        prev1 = np.where(active, at, prev1)
        wpow *= w
        m += 1
    if active.any():
        est[active] = 2.0 * env[active] * geo \
            + _EPS * absum[active] * (2.0 + 0.25 * cap)
    return vals, terms, est, status


def _poly_eval_grid_numpy(d, warr, tol):
    """Coefficient-major accumulation, vectorized over the w grid.

    Stops once a conservative global tail bound (taken at max(w)) clears the
    tolerance; individual entries may therefore carry a few sub-tolerance
    terms more than the scalar path, which is harmless at the promised
    cross-path agreement level.
    """
    warr = np.ascontiguousarray(warr, dtype=np.float64)
    out = np.full(warr.shape[0], d[0], np.complex128)
    if warr.size == 0 or d.shape[0] == 1:
        return out
    wmax = float(np.max(warr))
    if wmax <= 0.0:
        return out
    geo = wmax / (1.0 - wmax)
    comp = np.zeros(warr.shape[0], np.complex128)
    wpow = np.ones(warr.shape[0], np.float64)
    wpow_max = 1.0
    small = 0
    for m in range(1, d.shape[0]):
        wpow = wpow * warr
        wpow_max *= wmax
        tau = d[m] * wpow
        y = tau - comp
        tmp = out + y
        comp = (tmp - out) - y
        out = tmp
        dbar = abs(d[m])
        if m >= 1:
            dbar = max(dbar, abs(d[m - 1]))
        if m >= 2:
            dbar = max(dbar, abs(d[m - 2]))
        if dbar * wpow_max * geo <= tol:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return out


def f21_series(alpha, beta, c, w, tol, cap):
    if USING_NUMBA:
        return _f21_series_jit(complex(alpha), complex(beta), float(c),
                               float(w), float(tol), int(cap))
    return _f21_series_scalar(complex(alpha), complex(beta), float(c),
                              float(w), float(tol), int(cap))


def conjpair_series(two_rho, P, c, w, tol, cap):
    if USING_NUMBA:
        return _conjpair_series_jit(float(two_rho), complex(P), float(c),
                                    float(w), float(tol), int(cap))
    return _conjpair_series_scalar(float(two_rho), complex(P), float(c),
                                   float(w), float(tol), int(cap))


def conjpair_series_dd(two_rho, P, c, w, rel_tol, abs_tol, cap):
    """Escalation rung in double-double arithmetic; P may be complex.

    Returns (value, terms, est, status) with value a complex built from the
    correctly rounded collapse of the dd components; est does NOT include
    that final double rounding (the caller owns the representation error of
    whatever precision it stores the value in).
    """
    P = complex(P)
    if P.imag == 0.0:
        if USING_NUMBA:
            hi, lo, terms, est, status = _conjpair_series_dd_jit(
                float(two_rho), P.real, float(c), float(w), float(rel_tol),
                float(abs_tol), int(cap))
        else:
            hi, lo, terms, est, status = _conjpair_series_dd(
                float(two_rho), P.real, float(c), float(w), float(rel_tol),
                float(abs_tol), int(cap))
        return complex(hi + lo), terms, est, status
    if USING_NUMBA:
        rh, rl, ih, il, terms, est, status = _conjpair_series_ddc_jit(
            float(two_rho), P.real, P.imag, float(c), float(w),
            float(rel_tol), float(abs_tol), int(cap))
    else:
        rh, rl, ih, il, terms, est, status = _conjpair_series_ddc(
            float(two_rho), P.real, P.imag, float(c), float(w),
            float(rel_tol), float(abs_tol), int(cap))
    return complex(rh + rl, ih + il), terms, est, status


def conjpair_grid(two_rho, P, c, w, tol, cap):
    P = np.ascontiguousarray(P, dtype=np.complex128)
    if USING_NUMBA:
        return _conjpair_grid_jit(float(two_rho), P, float(c),
                                  float(w), float(tol), int(cap))
    return _conjpair_grid_numpy(float(two_rho), P, float(c),
                                float(w), float(tol), int(cap))


def conjpair_coeffs(two_rho, P, c, w_max, tol, cap):
    if USING_NUMBA:
        return _conjpair_coeffs_jit(float(two_rho), complex(P), float(c),
                                    float(w_max), float(tol), int(cap))
    return _conjpair_coeffs_scalar(float(two_rho), complex(P), float(c),
                                   float(w_max), float(tol), int(cap))


def poly_eval_grid(d, warr, tol=1e-14):
    d = np.ascontiguousarray(d, dtype=np.complex128)
    warr = np.ascontiguousarray(warr, dtype=np.float64)
    if USING_NUMBA:
        return _poly_eval_grid_jit(d, warr, float(tol))
    return _poly_eval_grid_numpy(d, warr, float(tol))
