"""Kernel-level checks: both dispatch paths, dd primitives, termination.

The compiled/plain selection happens at import time, so the cross-path test
runs the fallback in a subprocess with DRHARM_DISABLE_NUMBA set and compares
against the in-process values.
"""

import json
import math
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from drharm import _kernels

CASES = [
    # (two_rho, P, c, w)
    (1.0, 4.0 + 1.0, 2.0, 0.2),
    (2.0, 4.0 + 4.0, 3.0, 0.6),
    (3.0, 2.25 + 9.0, 2.5, 0.9),
    (4.0, 4.0 + 0.25, 3.0, 0.97),
    (2.0, complex(3.0, 1.5), 2.0, 0.5),
]

_SNIPPET = r"""
import json, sys
from drharm import _kernels
assert not _kernels.USING_NUMBA, "flag did not take effect"
out = []
for two_rho, P_re, P_im, c, w in json.loads(sys.argv[1]):
    v, terms, est, status = _kernels.conjpair_series(
        two_rho, complex(P_re, P_im), c, w, 1e-13, 200000)
    out.append([v.real, v.imag, terms, est, status])
print(json.dumps(out))
"""


def test_cross_path_agreement():
    env = dict(os.environ)
    env[_kernels.ENV_FLAG] = "1"
    payload = json.dumps([[tr, complex(P).real, complex(P).imag, c, w]
                          for tr, P, c, w in CASES])
    run = subprocess.run([sys.executable, "-c", _SNIPPET, payload],
                         env=env, capture_output=True, text=True, check=True)
    fallback = json.loads(run.stdout)
    for (two_rho, P, c, w), row in zip(CASES, fallback):
        v, terms, est, status = _kernels.conjpair_series(
            two_rho, P, c, w, 1e-13, 200000)
        other = complex(row[0], row[1])
        assert status == 0 and row[4] == 0
        assert abs(v - other) <= 1e-13 * max(abs(v), 1e-300)


def test_two_sum_exact():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = float(rng.normal()) * 10.0 ** int(rng.integers(-8, 8))
        b = float(rng.normal()) * 10.0 ** int(rng.integers(-8, 8))
        hi, lo = _kernels._two_sum(a, b)
        assert Fraction(hi) + Fraction(lo) == Fraction(a) + Fraction(b)
        assert hi == a + b  # hi is the correctly rounded sum


def test_two_prod_exact():
    rng = np.random.default_rng(2)
    for _ in range(200):
        a = float(rng.normal())
        b = float(rng.normal())
        hi, lo = _kernels._two_prod(a, b)
        assert Fraction(hi) + Fraction(lo) == Fraction(a) * Fraction(b)


def test_dd_mul_accuracy():
    # dd product of (1/3, correction) by itself should match 1/9 to ~1e-31
    third_hi = 1.0 / 3.0
    third_lo = float(Fraction(1, 3) - Fraction(third_hi))
    rh, rl = _kernels._dd_mul(third_hi, third_lo, third_hi, third_lo)
    err = abs(Fraction(rh) + Fraction(rl) - Fraction(1, 9))
    assert err < Fraction(1, 10 ** 30)


def test_dd_div_roundtrip():
    rh, rl = _kernels._dd_div(1.0, 0.0, 3.0, 0.0)
    back_h, back_l = _kernels._dd_mul(rh, rl, 3.0, 0.0)
    err = abs(Fraction(back_h) + Fraction(back_l) - 1)
    assert err < Fraction(1, 10 ** 30)


def test_conjpair_terminates_at_P_zero():
    v, terms, est, status = _kernels.conjpair_series(
        3.0, 0.0, 2.5, 0.95, 1e-13, 1000)
    assert v == 1.0 + 0.0j
    assert status == 0
    assert terms <= 4
    assert est <= 1e-15  # roundoff floor only, no tail


def test_f21_polynomial_termination():
    # alpha = -3 truncates the Gauss series after four terms
    w = 0.7
    v, terms, est, status = _kernels.f21_series(-3.0, 2.0, 1.5, w, 1e-13,
                                                1000)
    ref = sum(
        (math.prod(-3.0 + j for j in range(k))
         * math.prod(2.0 + j for j in range(k))
         / math.prod(1.5 + j for j in range(k))
         / math.factorial(k)) * w ** k
        for k in range(4))
    assert status == 0
    assert terms <= 6
    assert v.real == pytest.approx(ref, rel=1e-14)
    assert v.imag == 0.0


def test_term_cap_reports_status():
    v, terms, est, status = _kernels.conjpair_series(
        2.0, 9.0, 2.0, 0.999, 1e-13, 50)
    assert status == 1
    assert terms >= 50
    assert est > 0.0


def test_grid_matches_scalar():
    Ps = np.array([1.0 + 0.0j, 5.0, 12.25, 2.0 + 0.5j, 0.0])
    w = 0.85
    vals, terms, ests, stats = _kernels.conjpair_grid(2.0, Ps, 2.0, w, 1e-13,
                                                      200000)
    for P, v_grid in zip(Ps, vals):
        v, *_ = _kernels.conjpair_series(2.0, complex(P), 2.0, w, 1e-13,
                                         200000)
        assert abs(v_grid - v) <= 1e-13 * max(abs(v), 1e-300)
    assert not stats.any()


def test_dd_rung_extends_accuracy():
    # near-total cancellation: dd value is the reference the double path
    # must agree with to its own estimate
    two_rho, P, c, w = 2.0, 4.0 + 3.831705970207512 ** 2, 2.0, 0.9
    v_dd, terms, est_dd, status = _kernels.conjpair_series_dd(
        two_rho, P, c, w, 1e-28, 0.0, 500000)
    assert status == 0
    v, _, est, _ = _kernels.conjpair_series(two_rho, P, c, w, 1e-13, 500000)
    assert abs(v - v_dd) <= max(est, 1e-300)
    assert est_dd <= 1e-24 * abs(v_dd)


def test_coeffs_prefix_consistency():
    # materialized coefficient table reproduces the series partial sums
    two_rho, P, c = 3.0, 7.5, 2.5
    d, status = _kernels.conjpair_coeffs(two_rho, P, c, 0.9, 1e-13, 100000)
    assert status == 0
    w = 0.6
    direct, *_ = _kernels.conjpair_series(two_rho, P, c, w, 1e-13, 100000)
    horner = complex(0.0)
    for coef in d[::-1]:
        horner = horner * w + coef
    assert abs(horner - direct) <= 1e-12 * abs(direct)
