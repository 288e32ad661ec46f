import math

import numpy as np
import pytest
from scipy.integrate import quad

from drharm import DomainError, SpaceParams
from drharm.geometry import (ball_volume, cheeger, gamma_half_int,
                             log_growth_estimate, log_sphere_area,
                             sphere_area, sphere_area_logderiv,
                             surface_coefficient)


def test_params_basic():
    P = SpaceParams(2, 1)
    assert P.n == 4
    assert P.rho_f == 2 / 4 + 1 / 2
    assert P.shifted(2) == SpaceParams(2, 3)


def test_params_validation():
    with pytest.raises(DomainError):
        SpaceParams(-1, 0)
    with pytest.raises(DomainError):
        SpaceParams(0, -2)


def test_gamma_half_int_matches_gamma():
    for two_x in range(1, 25):
        assert gamma_half_int(two_x) == pytest.approx(
            math.gamma(two_x / 2.0), rel=1e-14)


def test_sphere_area_degenerate_line():
    # X^(0,0) is the real line; the "sphere" is two points
    assert sphere_area(SpaceParams(0, 0), 1.7) == pytest.approx(2.0)
    assert ball_volume(SpaceParams(0, 0), 1.7) == pytest.approx(3.4)


def test_sphere_area_real_hyperbolic_3space():
    # (0,2) carries the H^3 metric: A(r) = 4 pi sinh^2 r
    P = SpaceParams(0, 2)
    for r in (0.3, 1.0, 2.5):
        assert sphere_area(P, r) == pytest.approx(
            4.0 * math.pi * math.sinh(r) ** 2, rel=1e-13)


def test_area_positive():
    for p, q in ((0, 0), (1, 0), (2, 1), (3, 2), (8, 7)):
        P = SpaceParams(p, q)
        for r in np.linspace(0.05, 8.0, 25):
            assert sphere_area(P, float(r)) > 0.0


def test_small_r_euclidean_limit():
    # A(r) ~ omega_{n-1} r^(n-1) as r -> 0
    P = SpaceParams(3, 2)
    n = P.n
    omega = 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
    r = 1e-4
    assert sphere_area(P, r) == pytest.approx(omega * r ** (n - 1), rel=1e-6)


def test_ball_volume_derivative_is_area():
    rng = np.random.default_rng(42)
    for _ in range(10):
        p, q = int(rng.integers(0, 5)), int(rng.integers(0, 4))
        P = SpaceParams(p, q)
        r = float(rng.uniform(0.3, 4.0))
        h = 1e-5
        dv = (ball_volume(P, r + h) - ball_volume(P, r - h)) / (2.0 * h)
        assert dv == pytest.approx(sphere_area(P, r), rel=1e-7)


def test_ball_volume_against_direct_quadrature():
    P = SpaceParams(2, 1)
    for r in (0.5, 2.0, 5.0):
        ref, _ = quad(lambda s: sphere_area(P, s), 0.0, r, epsrel=1e-12)
        assert ball_volume(P, r) == pytest.approx(ref, rel=1e-9)


def test_log_sphere_area_consistent():
    P = SpaceParams(4, 3)
    for r in (0.5, 3.0, 7.0):
        assert log_sphere_area(P, r) == pytest.approx(
            math.log(sphere_area(P, r)), rel=1e-12)
    # and it survives radii where the plain area would overflow
    assert math.isfinite(log_sphere_area(P, 600.0))


def test_logderiv_matches_difference():
    P = SpaceParams(2, 2)
    for r in (0.4, 1.3, 5.0):
        h = 1e-6
        ref = (log_sphere_area(P, r + h) - log_sphere_area(P, r - h)) / (2 * h)
        assert sphere_area_logderiv(P, r) == pytest.approx(ref, rel=1e-7)


def test_cheeger_and_growth():
    assert cheeger(SpaceParams(2, 1)) == 2.0
    for p, q in ((0, 0), (2, 1), (3, 2), (8, 7)):
        P = SpaceParams(p, q)
        two_rho = 2.0 * P.rho_f
        assert cheeger(P) == pytest.approx(two_rho, rel=1e-15)
        if two_rho > 0.0:
            est = log_growth_estimate(P, 60.0)
            assert abs(est - two_rho) <= 0.05 * (two_rho + 1.0)


def test_domain_errors():
    P = SpaceParams(2, 1)
    with pytest.raises(DomainError):
        sphere_area(P, 0.0)
    with pytest.raises(DomainError):
        sphere_area(P, -1.0)
    with pytest.raises(DomainError):
        ball_volume(P, -0.5)


def test_surface_coefficient_value():
    # 2^n pi^(n/2) / Gamma(n/2) at (0,2): 16 pi
    assert surface_coefficient(SpaceParams(0, 2)) == pytest.approx(
        16.0 * math.pi, rel=1e-14)
