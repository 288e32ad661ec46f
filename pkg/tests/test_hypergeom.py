"""Series layer against an independent big-float oracle."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drharm import DomainError, NonConvergenceError
from drharm.hypergeom import (DEFAULT_TOL, EvalReport, HypArgs,
                              conjpair_report, f21_neg, f21_neg_conjpair)


def mp_f21(a, b, c, z, dps=40):
    with mp.workdps(dps):
        v = mp.hyp2f1(a, b, c, mp.mpf(z))
        return complex(v)


def mp_conjpair(rho, lam, c, z, dps=40):
    with mp.workdps(dps):
        lam = mp.mpmathify(lam)
        v = mp.hyp2f1(rho - 1j * lam, rho + 1j * lam, c, mp.mpf(z))
        return complex(v)


def test_f21_neg_against_mpmath():
    rng = np.random.default_rng(101)
    for _ in range(40):
        a = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        c = float(rng.uniform(0.5, 4.0))
        z = -float(rng.uniform(0.0, 30.0))
        rep = f21_neg(HypArgs(a, b, c, z))
        ref = mp_f21(a, b, c, z)
        assert abs(rep.value - ref) <= 1e-11 * max(abs(ref), 1e-10)


def test_f21_neg_at_zero_argument():
    rep = f21_neg(HypArgs(1.5, 2.5, 2.0, 0.0))
    assert rep.value == 1.0 + 0.0j
    assert rep.terms_used <= 2


def test_conjpair_against_mpmath_real_lambda():
    rng = np.random.default_rng(102)
    for _ in range(30):
        rho = float(rng.uniform(0.0, 3.0))
        lam = float(rng.uniform(0.1, 6.0))
        c = float(rng.uniform(1.0, 4.0))
        z = -float(np.sinh(rng.uniform(0.05, 2.0)) ** 2)
        got = f21_neg_conjpair(rho, lam, c, z)
        ref = mp_conjpair(rho, lam, c, z)
        assert abs(got - ref) <= 1e-11 * max(abs(ref), 1e-12)
        assert got.imag == 0.0  # coefficients real for real lambda


def test_conjpair_against_mpmath_complex_lambda():
    rng = np.random.default_rng(103)
    for _ in range(15):
        rho = float(rng.uniform(0.5, 2.5))
        lam = complex(rng.uniform(0.1, 4.0), rng.uniform(-1.5, 1.5))
        c = float(rng.uniform(1.0, 3.5))
        z = -float(np.sinh(rng.uniform(0.05, 1.5)) ** 2)
        got = f21_neg_conjpair(rho, lam, c, z)
        ref = mp_conjpair(rho, lam, c, z)
        assert abs(got - ref) <= 1e-11 * max(abs(ref), 1e-12)


def test_conjpair_terminates_at_i_rho():
    # lambda = i rho makes P = 0: the series is exactly the constant 1
    for rho in (0.5, 1.0, 2.25):
        assert f21_neg_conjpair(rho, 1j * rho, 2.0, -5.0) == 1.0 + 0.0j


@settings(max_examples=50, deadline=None)
@given(lam=st.floats(0.01, 8.0), rr=st.floats(0.05, 6.0))
def test_evenness_in_lambda(lam, rr):
    z = -math.sinh(rr / 2.0) ** 2
    a = f21_neg_conjpair(1.25, lam, 2.0, z)
    b = f21_neg_conjpair(1.25, -lam, z=z, c=2.0)
    assert a == b  # identical series, coefficient-for-coefficient


@settings(max_examples=50, deadline=None)
@given(lam_re=st.floats(0.05, 5.0), lam_im=st.floats(-2.0, 2.0),
       rr=st.floats(0.05, 4.0))
def test_conjugation_symmetry(lam_re, lam_im, rr):
    z = -math.sinh(rr / 2.0) ** 2
    lam = complex(lam_re, lam_im)
    a = f21_neg_conjpair(1.5, lam, 2.5, z)
    b = f21_neg_conjpair(1.5, lam.conjugate(), 2.5, z)
    assert abs(b.conjugate() - a) <= 1e-12 * max(abs(a), 1e-12)


def test_est_error_honest_against_tighter_run():
    # the reported bound must cover the distance to a 100x tighter rerun
    rng = np.random.default_rng(104)
    for _ in range(100):
        rho = float(rng.uniform(0.0, 2.5))
        lam = float(rng.uniform(0.05, 6.0))
        c = float(rng.uniform(1.0, 4.0))
        z = -float(np.sinh(rng.uniform(0.05, 2.2)) ** 2)
        loose = conjpair_report(rho, lam, c, z, tol=1e-8, escalate=False)
        tight = conjpair_report(rho, lam, c, z, tol=1e-13)
        err = abs(loose.value - tight.value)
        assert err <= loose.est_error + 1e-13 * abs(tight.value)


def test_est_error_honest_against_mpmath():
    # est_error bounds the summation error of the implemented recurrence,
    # whose coefficients see (rho, lambda) only through the double-rounded
    # P = fl(rho^2 + lambda^2); the oracle works from (rho, lambda) exactly,
    # so the comparison carries F's sensitivity to that half-ulp of P on
    # top of est_error (observed up to ~30 ulp; 60 here for margin)
    rng = np.random.default_rng(105)
    for _ in range(40):
        rho = float(rng.uniform(0.0, 2.0))
        lam = float(rng.uniform(0.05, 5.0))
        c = float(rng.uniform(1.0, 3.5))
        z = -float(np.sinh(rng.uniform(0.1, 2.0)) ** 2)
        rep = conjpair_report(rho, lam, c, z, tol=1e-12)
        ref = mp_conjpair(rho, lam, c, z, dps=50)
        assert abs(rep.value - ref) <= rep.est_error + 60.0 * 1.2e-16 * abs(ref)


def test_report_fields():
    rep = conjpair_report(1.0, 2.0, 2.0, -1.0)
    assert isinstance(rep, EvalReport)
    assert rep.terms_used > 0
    assert rep.est_error >= 0.0
    assert rep.est_error <= 10.0 * DEFAULT_TOL * abs(rep.value)


def test_domain_errors():
    with pytest.raises(DomainError):
        HypArgs(1.0, 1.0, 2.0, 0.5)  # z > 0
    with pytest.raises(DomainError):
        HypArgs(1.0, 1.0, -1.0, -0.5)  # c <= 0
    with pytest.raises(DomainError):
        f21_neg(HypArgs(1.0, 1.0, 2.0, -1.0), tol=1e-20)  # below MIN_TOL


def test_term_cap_raises_with_partial():
    with pytest.raises(NonConvergenceError) as exc:
        conjpair_report(2.0, 3.0, 2.0, -math.sinh(2.0) ** 2, tol=1e-12,
                        term_cap=40, escalate=False)
    err = exc.value
    assert err.partial is not None
    assert err.est_error > 0.0
    assert err.terms >= 40


def test_escalation_handles_cancellation():
    # deep in the cancellation regime the ladder still meets a 1e-12 ask
    rho, c = 1.0, 2.0
    lam = 3.8317059702075125  # near a zero of the (2,1) sphere function
    z = -math.sinh(2.4) ** 2
    rep = conjpair_report(rho, lam, c, z, tol=1e-12)
    ref = mp_conjpair(rho, lam, c, z, dps=60)
    assert abs(rep.value - ref) <= 1e-12 * max(abs(ref), 1e-14)


def test_abs_tol_floor_allows_stop_at_function_zero():
    # at an actual zero a pure relative demand cannot be met; the absolute
    # floor lets the ladder stop once the tail is pinned below it
    rho, c = 1.0, 2.0
    z = -math.sinh(0.5) ** 2  # radius 1
    lam = 3.831205993468  # polished zero of the (2,1) spherical function there
    rep = conjpair_report(rho, lam, c, z, tol=1e-12, abs_tol=1e-13)
    assert abs(rep.value) < 1e-10  # genuinely at a zero
    ref = mp_conjpair(rho, lam, c, z, dps=50)
    assert abs(rep.value - ref) <= 1e-13 + rep.est_error
