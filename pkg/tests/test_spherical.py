import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drharm import DomainError, SpaceParams, SpectralPoint
from drharm.geometry import sphere_area_logderiv
from drharm.spherical import (IM_LAMBDA_CAP, RADIUS_CAP, phi, phi_dk,
                              phi_grid, phi_lambda_jet, phi_ode_oracle,
                              phi_radial_grid, phi_report, phi_t_jet, psi)

ANCHOR_GRID = np.arange(0.05, 8.0 + 1e-9, 0.05)


def closed_form(pq, lam, r):
    if pq == (0, 0):
        return math.cos(lam * r)
    if pq == (2, 0):
        return math.sin(lam * r) / (2.0 * lam * math.sinh(0.5 * r))
    if pq == (0, 2):
        return math.sin(lam * r) / (lam * math.sinh(r))
    raise AssertionError(pq)


@pytest.mark.parametrize("pq", [(0, 0), (2, 0), (0, 2)])
def test_degenerate_closed_forms(pq):
    P = SpaceParams(*pq)
    for lam in (0.5, 1.0, 2.0, 5.0):
        vals = phi_radial_grid(P, lam, ANCHOR_GRID)
        refs = np.array([closed_form(pq, lam, float(r)) for r in ANCHOR_GRID])
        rel = np.abs(vals - refs) / np.maximum(np.abs(refs), 1e-30)
        assert float(rel.max()) <= 1e-10


def test_phi_at_origin_is_one():
    for pq in ((0, 0), (2, 1), (5, 4), (8, 7)):
        P = SpaceParams(*pq)
        for lam in (0.0, 1.0, 3.5, 2.0 + 1.0j):
            assert phi(P, lam, 0.0) == 1.0 + 0.0j


def test_phi_at_i_rho_is_exactly_one():
    # P = rho^2 + lambda^2 = 0 terminates the series at the constant term
    for pq in ((2, 1), (3, 2), (8, 7)):
        P = SpaceParams(*pq)
        for r in (0.1, 1.0, 5.0, 9.5):
            assert phi(P, 1j * P.rho_f, r) == 1.0 + 0.0j
            assert phi(P, -1j * P.rho_f, r) == 1.0 + 0.0j


@settings(max_examples=40, deadline=None)
@given(lam=st.floats(0.05, 8.0), r=st.floats(0.01, 8.0))
def test_evenness(lam, r):
    P = SpaceParams(3, 2)
    assert phi(P, lam, r) == phi(P, -lam, r)


@settings(max_examples=40, deadline=None)
@given(lam_re=st.floats(0.05, 5.0), lam_im=st.floats(-2.0, 2.0),
       r=st.floats(0.01, 6.0))
def test_conjugation(lam_re, lam_im, r):
    P = SpaceParams(2, 2)
    lam = complex(lam_re, lam_im)
    a = phi(P, lam, r)
    b = phi(P, lam.conjugate(), r)
    assert abs(b.conjugate() - a) <= 1e-12 * max(abs(a), 1e-12)


def test_real_lambda_gives_real_phi():
    P = SpaceParams(3, 2)
    for lam in (0.3, 2.0, 7.7):
        for r in (0.2, 3.0, 8.0):
            assert phi(P, lam, r).imag == 0.0


def test_ode_oracle_agreement():
    rng = np.random.default_rng(7)
    pool = ((0, 0), (2, 1), (3, 2), (2, 2), (4, 3))
    for _ in range(20):
        P = SpaceParams(*pool[int(rng.integers(len(pool)))])
        lam = float(rng.uniform(0.1, 5.0))
        r = float(rng.uniform(0.1, 5.0))
        a = phi(P, lam, r)
        b = phi_ode_oracle(P, lam, r)
        assert abs(a - b) <= 1e-6 * max(abs(a), 1e-12)


def test_radial_ode_residual():
    # second-difference residual of the eigenfunction equation
    # u'' + (A'/A) u' + (lambda^2 + rho^2) u = 0, step 1e-3
    rng = np.random.default_rng(8)
    pool = ((0, 0), (2, 1), (3, 2), (2, 2))
    h = 1e-3
    for _ in range(20):
        P = SpaceParams(*pool[int(rng.integers(len(pool)))])
        lam = float(rng.uniform(0.3, 2.5))
        r = float(rng.uniform(0.3, 4.0))
        mu2 = lam * lam + P.rho_f ** 2
        um, u0, up = (phi(P, lam, r - h).real, phi(P, lam, r).real,
                      phi(P, lam, r + h).real)
        resid = ((up - 2.0 * u0 + um) / h ** 2
                 + sphere_area_logderiv(P, r) * (up - um) / (2.0 * h)
                 + mu2 * u0)
        assert abs(resid) <= 1e-5


def test_phi_dk_against_central_differences():
    P = SpaceParams(3, 2)
    lam, r, h = 1.9, 2.7, 1e-4
    d1 = phi_dk(P, SpectralPoint(lam, 1), r)
    ref1 = (phi(P, lam + h, r) - phi(P, lam - h, r)) / (2.0 * h)
    assert abs(d1 - ref1) <= 1e-5 * max(abs(d1), 1e-12)
    d2 = phi_dk(P, SpectralPoint(lam, 2), r)
    ref2 = (phi(P, lam + h, r) - 2.0 * phi(P, lam, r)
            + phi(P, lam - h, r)) / h ** 2
    assert abs(d2 - ref2) <= 1e-5 * max(abs(d2), 1e-12)


def test_phi_lambda_jet_matches_phi_dk():
    P = SpaceParams(2, 2)
    lam, r = 1.3, 1.8
    jet = phi_lambda_jet(P, lam, r, 3)
    assert abs(jet[0] - phi(P, lam, r)) <= 1e-12
    for k in (1, 2, 3):
        dk = phi_dk(P, SpectralPoint(lam, k), r)
        assert abs(jet[k] * math.factorial(k) - dk) <= 1e-10 * max(abs(dk), 1.0)


def test_phi_grid_matches_scalar():
    P = SpaceParams(2, 1)
    lams = np.linspace(0.05, 12.0, 400)
    vals = phi_grid(P, lams, 2.0)
    for j in (0, 57, 140, 399):
        ref = phi(P, float(lams[j]), 2.0)
        assert abs(vals[j] - ref) <= 1e-12 * max(abs(ref), 1e-14)


def test_phi_radial_grid_matches_scalar():
    P = SpaceParams(3, 2)
    rs = np.linspace(0.05, 8.0, 200)
    vals = phi_radial_grid(P, 1.7, rs)
    for j in (0, 45, 123, 199):
        ref = phi(P, 1.7, float(rs[j]))
        assert abs(vals[j] - ref) <= 1e-12 * max(abs(ref), 1e-14)


def test_phi_t_jet_derivatives():
    # coefficients are d/dt Taylor coefficients at t0 = cosh r
    P = SpaceParams(2, 2)
    lam, r = 1.4, 1.9
    t0 = math.cosh(r)
    jet = phi_t_jet(P, lam, 0, t0, 4)
    assert abs(complex(jet.value) - phi(P, lam, r)) <= 1e-12
    h = 1e-5
    tp, tm = t0 + h, t0 - h
    fp = phi(P, lam, math.acosh(tp))
    fm = phi(P, lam, math.acosh(tm))
    d1 = (fp - fm) / (2.0 * h)
    assert abs(complex(jet.coeffs[1]) - d1) <= 1e-7 * max(abs(d1), 1e-10)


def test_phi_report_est_bounds_true_error():
    P = SpaceParams(4, 3)
    rep = phi_report(P, 2.2, 4.0, tol=1e-9)
    tight = phi(P, 2.2, 4.0, tol=1e-13)
    assert abs(rep.value - tight) <= rep.est_error + 1e-13 * abs(tight)


def test_psi_closed_form():
    lam, t = 1.7, 2.3
    assert psi(lam, t) == pytest.approx(cmath.cos(lam * t))
    assert psi(SpectralPoint(lam, 1), t) == pytest.approx(
        -t * math.sin(lam * t))
    assert psi(SpectralPoint(lam, 2), t) == pytest.approx(
        -t * t * math.cos(lam * t))


def test_caps_enforced():
    P = SpaceParams(2, 1)
    with pytest.raises(DomainError):
        phi(P, 1.0, RADIUS_CAP + 0.5)
    with pytest.raises(DomainError):
        phi(P, complex(1.0, IM_LAMBDA_CAP + 1.0), 1.0)
    with pytest.raises(DomainError):
        phi(P, 1.0, -0.2)
    with pytest.raises(DomainError):
        phi_dk(P, SpectralPoint(1.0, 9), 1.0)
