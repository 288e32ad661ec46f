"""Zero sets of spectral functions with argument-principle certificates.

The two-radius theorems hinge on whether two functions of the spectral
parameter share a zero:

    Ball kind    f(lambda) = phi_lambda^(p,q+2)(r)
    Sphere kind  f(lambda) = phi_lambda^(p,q)(r)
    MeanValue    f(lambda) = phi_lambda^(p,q)(r) - 1   (lambda = +-i rho excluded)

Real zeros are located by a sign-change scan plus bisection and secant
polish.  Zeros are searched on lambda > 0 only (the functions are even) and
lambda = 0 is evaluated directly.  Since the theorems quantify over complex
lambda, each set can be certified by counting zeros of the analytic function
in the rectangle [eps, Lambda_max] x [-H, H] via the argument principle; the
count must equal the number of real zeros found, with multiplicity (the
mean-value kind has tangent zeros of multiplicity two, located by a dedicated
finder since no sign change exists there).  certified_count doubles the
rectangle count, accounting for the mirror rectangle on the negative axis.

For the mean-value kind the real axis is typically empty (|phi_lambda(r)| < 1
for real lambda when rho > 0) and candidates live on the imaginary axis;
lambda = i mu is scanned for mu in (0, rho + 2], with the trivial zero at
mu = rho excluded.  The imaginary segment lies outside the certification
rectangle; every verdict records this scope.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ContourTooCloseError, DomainError, TangentZeroWarning
from .geometry import SpaceParams
from .spherical import SpectralPoint, phi, phi_dk, phi_grid, phi_radial_grid
from .transforms import DistKind

__all__ = [
    "DEFAULT_SCAN_STEP",
    "DEFAULT_ZERO_TOL",
    "DEFAULT_CERT_HEIGHT",
    "LAMBDA_MAX_CAP",
    "Admissibility",
    "ZeroSet",
    "PairVerdict",
    "real_zeros",
    "find_tangent_zeros",
    "complex_zero_count",
    "spectral_zero_set",
    "common_zero",
    "radial_zeros",
]

DEFAULT_SCAN_STEP = 0.01
DEFAULT_ZERO_TOL = 1e-10
DEFAULT_CERT_HEIGHT = 2.0
LAMBDA_MAX_CAP = 40.0

# absolute accuracy floor for series evaluations during root polishing:
# relative accuracy is meaningless at a zero of the function being polished,
# and demanding it would run the precision ladder to its term cap; 1e-13 sits
# three decades under the 1e-10 residual tolerance on functions of scale <= 1
_SERIES_ABS_TOL = 1e-13

_EPS = float(np.finfo(np.float64).eps)


class Admissibility(Enum):
    ADMISSIBLE = "admissible"
    INADMISSIBLE = "inadmissible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ZeroSet:
    """Real zeros of an even spectral function on (0, Lambda_max].

    ``multiplicities`` marks sign-change zeros 1 and tangencies 2.  When a
    certificate was attempted, ``rectangle_count`` is the argument-principle
    zero count in [cert_window] x [-cert_height, cert_height]; the set is
    ``certified`` when that count equals the sum of multiplicities of the
    listed zeros inside cert_window, and ``certified_count`` doubles it (the
    even-function mirror strip).  Imaginary-axis data (mean-value kind) lives
    in the ``imag_*`` fields; lambda = i mu.
    """

    zeros: tuple
    residuals: tuple
    multiplicities: tuple
    window: tuple
    tol: float
    scan_step: float
    certified_count: int | None = None
    rectangle_count: int | None = None
    certified: bool | None = None
    cert_height: float | None = None
    cert_window: tuple | None = None
    imag_zeros: tuple = ()
    imag_residuals: tuple = ()
    imag_multiplicities: tuple = ()
    imag_window: tuple | None = None
    origin_abs: float | None = None
    origin_zero: bool = False
    notes: tuple = ()

    def __post_init__(self):
        zs = self.zeros
        if any(zs[i] >= zs[i + 1] for i in range(len(zs) - 1)):
            raise DomainError("zeros must be strictly increasing")
        if len(zs) != len(self.residuals) or len(zs) != len(self.multiplicities):
            raise DomainError("zeros/residuals/multiplicities lengths differ")

    @property
    def total_multiplicity(self) -> int:
        return int(sum(self.multiplicities))


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of a common-zero search for a pair of radii."""

    admissible: Admissibility
    witness: complex | None
    witness_residuals: tuple | None
    min_gap: float
    window: tuple
    cert_height: float
    tol: float
    delta: float
    scope: str
    notes: tuple = ()

    def __post_init__(self):
        if self.admissible is Admissibility.INADMISSIBLE:
            if self.witness is None or self.witness_residuals is None:
                raise DomainError("inadmissible verdict requires witness and residuals")


# ---------------------------------------------------------------------------
# 1-d root location

def _polish_bracket(f, a, b, fa, fb, tol):
    """Refine a sign-change bracket to near machine width; secant-accelerated.

    Returns (x, |f(x)|).  The bracket property is preserved throughout, so
    the reported zero always has a sign change within a few ulps.
    """
    if fa == 0.0:
        return a, 0.0
    if fb == 0.0:
        return b, 0.0
    x_prev, f_prev = a, fa
    x_cur, f_cur = b, fb
    for _ in range(200):
        width = b - a
        scale = max(1.0, abs(a), abs(b))
        if width <= 4.0 * _EPS * scale:
            break
        # secant proposal, clipped into the open bracket; fall back to bisection
        denom = f_cur - f_prev
        if denom != 0.0:
            x_new = x_cur - f_cur * (x_cur - x_prev) / denom
        else:
            x_new = 0.5 * (a + b)
        if not (a + 0.125 * _EPS * scale < x_new < b - 0.125 * _EPS * scale):
            x_new = 0.5 * (a + b)
        f_new = f(x_new)
        if f_new == 0.0:
            return x_new, 0.0
        if (fa > 0.0) == (f_new > 0.0):
            a, fa = x_new, f_new
        else:
            b, fb = x_new, f_new
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
    if abs(fa) <= abs(fb):
        return a, abs(fa)
    return b, abs(fb)


def _grid_values(f, xs, f_grid):
    if f_grid is not None:
        vals = np.asarray(f_grid(xs), dtype=np.float64)
        if vals.shape != xs.shape:
            raise DomainError("f_grid returned a wrong-shaped array")
        return vals
    return np.array([float(f(x)) for x in xs], dtype=np.float64)


def _scan_axis(f, x_max, scan_step, tol, f_grid, x_min=None):
    """Sign-change scan on (0, x_max]; returns (zeros, residuals) and warns on dips."""
    if scan_step <= 0.0:
        raise DomainError(f"scan_step must be > 0, got {scan_step}")
    if x_max <= 0.0:
        raise DomainError(f"scan window must have positive length, got {x_max}")
    start = scan_step if x_min is None else x_min
    xs = np.arange(start, x_max + 0.5 * scan_step, scan_step)
    xs = xs[xs <= x_max]
    if xs.size == 0 or xs[-1] < x_max - 1e-12 * max(1.0, x_max):
        xs = np.append(xs, x_max)
    vals = _grid_values(f, xs, f_grid)
    zeros = []
    residuals = []
    for i in range(xs.size):
        if vals[i] == 0.0:
            zeros.append(float(xs[i]))
            residuals.append(0.0)
    for i in range(xs.size - 1):
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0 or fb == 0.0:
            continue
        if (fa > 0.0) != (fb > 0.0):
            x, res = _polish_bracket(f, float(xs[i]), float(xs[i + 1]), fa, fb, tol)
            zeros.append(x)
            residuals.append(res)
    # dips: |f| below tol at a local minimum without a bracketing sign change
    absv = np.abs(vals)
    for i in range(1, xs.size - 1):
        if (absv[i] <= tol and vals[i] != 0.0
                and (vals[i - 1] > 0.0) == (vals[i] > 0.0)
                and (vals[i] > 0.0) == (vals[i + 1] > 0.0)
                and absv[i] <= absv[i - 1] and absv[i] <= absv[i + 1]):
            warnings.warn(
                f"|f| dips to {absv[i]:.3g} at x = {xs[i]:.6g} without sign change",
                TangentZeroWarning, stacklevel=3)
    order = np.argsort(zeros)
    zeros = [zeros[j] for j in order]
    residuals = [residuals[j] for j in order]
    # dedupe near-identical roots (grid-point zero also caught by a bracket)
    out_z, out_r = [], []
    for z, res in zip(zeros, residuals):
        if out_z and z - out_z[-1] <= 1e3 * _EPS * max(1.0, abs(z)):
            if res < out_r[-1]:
                out_z[-1], out_r[-1] = z, res
            continue
        out_z.append(z)
        out_r.append(res)
    return out_z, out_r


def real_zeros(f, lam_max, scan_step=DEFAULT_SCAN_STEP, tol=DEFAULT_ZERO_TOL,
               f_grid=None) -> ZeroSet:
    """Sign-change zeros of a real-valued f on (0, lam_max], no certificate.

    ``f_grid`` may supply vectorized evaluation over a float array; values
    must match f.  Near-tangencies (|f| <= tol without sign change) emit
    TangentZeroWarning and are not included.
    """
    zs, res = _scan_axis(f, lam_max, scan_step, tol, f_grid)
    return ZeroSet(zeros=tuple(zs), residuals=tuple(res),
                   multiplicities=tuple(1 for _ in zs),
                   window=(0.0, float(lam_max)), tol=float(tol),
                   scan_step=float(scan_step))


def find_tangent_zeros(f, df, x_max, scan_step=DEFAULT_SCAN_STEP,
                       tol=DEFAULT_ZERO_TOL, f_grid=None, x_min=None):
    """Tangency zeros of f <= 0 (local maxima touching 0), multiplicity 2.

    Scans for interior local maxima of f, polishes each on the derivative
    (df has a simple sign change there), and accepts the point as a zero
    when |f| <= tol.  Returns (zeros, residuals).
    """
    start = scan_step if x_min is None else x_min
    xs = np.arange(start, x_max + 0.5 * scan_step, scan_step)
    xs = xs[xs <= x_max]
    if xs.size < 3:
        return [], []
    vals = _grid_values(f, xs, f_grid)
    zeros = []
    residuals = []
    for i in range(1, xs.size - 1):
        if not (vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1]):
            continue
        a, b = float(xs[i - 1]), float(xs[i + 1])
        da, db = float(df(a)), float(df(b))
        if da == 0.0:
            x_star = a
        elif db == 0.0:
            x_star = b
        elif (da > 0.0) == (db > 0.0):
            # no derivative sign change; maximum sits on a shoulder
            continue
        else:
            x_star, _ = _polish_bracket(df, a, b, da, db, tol)
        fv = abs(float(f(x_star)))
        if fv <= tol:
            zeros.append(x_star)
            residuals.append(fv)
    return zeros, residuals


# ---------------------------------------------------------------------------
# argument-principle counting

def _rect_path(x0, x1, y0, y1, samples_per_edge):
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        n = max(2, int(samples_per_edge))
        seg = a + (b - a) * np.arange(n) / n
        pts.extend(complex(z) for z in seg)
    pts.append(pts[0])
    return pts


def complex_zero_count(f, rectangle, samples_per_edge=64, f_vec=None,
                       max_depth=26) -> int:
    """Zeros (with multiplicity) of analytic f inside a rectangle.

    ``rectangle`` is (x0, x1, y0, y1).  The winding number of f along the
    counterclockwise boundary is accumulated from argument increments.  An
    increment below pi/2 is not sufficient on its own: a zero lying close to
    the contour can sweep the argument by a full turn between two samples
    and alias into a small increment.  Every segment is therefore verified
    against its midpoint: both half-increments must stay below pi/2 and the
    midpoint modulus must not dip below a quarter of the endpoint moduli (a
    dip is the signature of a near pass); failing segments are bisected.
    Raises ContourTooCloseError when the contour modulus drops below 1e-9 of
    its maximum (a zero on or near the boundary) or the refinement depth is
    exhausted; perturb the rectangle and retry in that case.
    """
    x0, x1, y0, y1 = map(float, rectangle)
    if not (x1 > x0 and y1 > y0):
        raise DomainError("rectangle must have positive width and height")
    # sample at double density: even indices form the nominal grid, odd ones
    # supply the midpoint probes without leaving the vectorized path
    pts = _rect_path(x0, x1, y0, y1, 2 * samples_per_edge)
    if f_vec is not None:
        fvals = [complex(v) for v in f_vec(np.array(pts, dtype=np.complex128))]
    else:
        fvals = [complex(f(z)) for z in pts]
    mods = [abs(v) for v in fvals]
    fmax = max(mods)
    if fmax == 0.0 or min(mods) < 1e-9 * fmax:
        raise ContourTooCloseError(
            "contour modulus dips below 1e-9 of its max; perturb the rectangle")
    total = 0.0
    half_pi = 0.5 * math.pi
    for i in range(0, len(pts) - 2, 2):
        stack = [(pts[i], fvals[i], pts[i + 2], fvals[i + 2], 0, fvals[i + 1])]
        while stack:
            za, fa, zb, fb, depth, fm = stack.pop()
            zm = 0.5 * (za + zb)
            if fm is None:
                fm = complex(f(zm))
            am = abs(fm)
            if am < 1e-9 * fmax:
                raise ContourTooCloseError(
                    f"contour modulus {am:.3g} too small near z = {zm:.6g}")
            d1 = cmath.phase(fm / fa)
            d2 = cmath.phase(fb / fm)
            ok = abs(d1) < half_pi and abs(d2) < half_pi \
                and am >= 0.25 * min(abs(fa), abs(fb))
            if ok:
                total += d1 + d2
                continue
            if depth >= max_depth:
                raise ContourTooCloseError(
                    f"argument increment will not settle near z = {za:.6g}; "
                    "a zero sits on or near the contour")
            stack.append((zm, fm, zb, fb, depth + 1, None))
            stack.append((za, fa, zm, fm, depth + 1, None))
    winding = total / (2.0 * math.pi)
    count = round(winding)
    if abs(winding - count) > 0.1:
        raise ContourTooCloseError(
            f"winding number {winding:.4f} is not close to an integer")
    if count < 0:
        raise ContourTooCloseError(f"negative winding count {count} (f not analytic?)")
    return int(count)


# ---------------------------------------------------------------------------
# spectral zero sets

def _kind_function(params: SpaceParams, kind: DistKind, r: float, tol_series: float):
    """Scalar/grid/derivative evaluators of the kind's spectral factor."""
    if kind is DistKind.BALL:
        fp = params.shifted(2)
        offset = 0.0
    elif kind is DistKind.SPHERE:
        fp = params
        offset = 0.0
    elif kind is DistKind.MEAN_VALUE:
        fp = params
        offset = -1.0
    else:
        raise DomainError(f"unknown kind {kind!r}")

    def f_scalar(lam):
        return phi(fp, lam, r, tol_series, abs_tol=_SERIES_ABS_TOL) + offset

    def f_real(x):
        return (phi(fp, complex(x), r, tol_series,
                    abs_tol=_SERIES_ABS_TOL) + offset).real

    def f_grid_real(xs):
        return (phi_grid(fp, np.asarray(xs, dtype=np.float64), r, tol_series,
                         abs_tol=_SERIES_ABS_TOL) + offset).real

    def f_grid_complex(zs):
        return phi_grid(fp, np.asarray(zs, dtype=np.complex128), r, tol_series,
                        abs_tol=_SERIES_ABS_TOL) + offset

    def df_real(x):
        # f is real on the real axis; so is its first lambda-derivative
        return phi_dk(fp, SpectralPoint(complex(x), 1), r, tol_series).real

    return fp, offset, f_scalar, f_real, f_grid_real, f_grid_complex, df_real


def _imag_axis_scan(params: SpaceParams, kind: DistKind, r: float, rho: float,
                    scan_step, tol, tol_series):
    """Mean-value kind only: zeros of phi_{i mu}(r) - 1 on mu in (0, rho + 2].

    The trivial solution mu = rho is excluded (exclusion radius twice the
    scan step).  phi_{i mu} is exactly real, decreasing cancellation worries.
    """
    mu_max = rho + 2.0

    def g(mu):
        return (phi(params, complex(0.0, mu), r, tol_series,
                    abs_tol=_SERIES_ABS_TOL) - 1.0).real

    def g_grid(mus):
        lams = 1j * np.asarray(mus, dtype=np.float64)
        return (phi_grid(params, lams, r, tol_series,
                         abs_tol=_SERIES_ABS_TOL) - 1.0).real

    def dg(mu):
        # d/dmu phi_{i mu} = i * (dphi/dlambda)(i mu), a real number
        return (1j * phi_dk(params, SpectralPoint(complex(0.0, mu), 1), r,
                            tol_series)).real

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TangentZeroWarning)
        zs, res = _scan_axis(g, mu_max, scan_step, tol, g_grid)
    mult = [1] * len(zs)
    tz, tres = find_tangent_zeros(g, dg, mu_max, scan_step, tol, g_grid)
    for z, rr in zip(tz, tres):
        if all(abs(z - z0) > 1e3 * _EPS * max(1.0, abs(z)) for z0 in zs):
            zs.append(z)
            res.append(rr)
            mult.append(2)
    order = np.argsort(zs)
    zs = [zs[j] for j in order]
    res = [res[j] for j in order]
    mult = [mult[j] for j in order]
    excl = 2.0 * scan_step
    kept = [(z, rr, mm) for z, rr, mm in zip(zs, res, mult) if abs(z - rho) > excl]
    return ([z for z, _, _ in kept], [rr for _, rr, _ in kept],
            [mm for _, _, mm in kept], (0.0, mu_max), excl)


def spectral_zero_set(params: SpaceParams, r: float, kind: DistKind,
                      lam_max: float, cert_height: float = DEFAULT_CERT_HEIGHT,
                      scan_step: float = DEFAULT_SCAN_STEP,
                      tol: float = DEFAULT_ZERO_TOL,
                      tol_series: float = 1e-12,
                      certify: bool = True) -> ZeroSet:
    """Certified real-zero set of the kind's spectral function at radius r."""
    if not (0.0 < lam_max <= LAMBDA_MAX_CAP):
        raise DomainError(f"need 0 < lam_max <= {LAMBDA_MAX_CAP}, got {lam_max}")
    rho = params.rho_f
    (fp, offset, f_scalar, f_real, f_grid_real, f_grid_complex, df_real
     ) = _kind_function(params, kind, r, tol_series)

    notes = []
    mean_kind = kind is DistKind.MEAN_VALUE

    with warnings.catch_warnings():
        if mean_kind:
            warnings.simplefilter("ignore", TangentZeroWarning)
        zs, res = _scan_axis(f_real, lam_max, scan_step, tol, f_grid_real)
    mult = [1] * len(zs)
    if mean_kind:
        tz, tres = find_tangent_zeros(f_real, df_real, lam_max, scan_step, tol,
                                      f_grid_real)
        for z, rr in zip(tz, tres):
            if all(abs(z - z0) > 1e3 * _EPS * max(1.0, abs(z)) for z0 in zs):
                zs.append(z)
                res.append(rr)
                mult.append(2)
        order = np.argsort(zs)
        zs = [zs[j] for j in order]
        res = [res[j] for j in order]
        mult = [mult[j] for j in order]

    # lambda = 0 handled by direct evaluation (scan starts at scan_step)
    origin_abs = abs(f_scalar(0.0))
    origin_zero = origin_abs <= tol
    if mean_kind and rho == 0.0:
        # lambda = 0 is i*rho here, excluded by the theorem's hypothesis
        origin_zero = False
        notes.append("origin equals i*rho and is excluded (mean-value kind)")

    imag_zeros = ()
    imag_res = ()
    imag_mult = ()
    imag_window = None
    if mean_kind:
        iz, ires, imult, iwin, excl = _imag_axis_scan(
            params, kind, r, rho, scan_step, tol, tol_series)
        imag_zeros, imag_res, imag_mult = tuple(iz), tuple(ires), tuple(imult)
        imag_window = iwin
        notes.append(
            f"imaginary segment (0, {iwin[1]:.6g}] scanned; mu = rho excluded "
            f"within {excl:.3g}")

    certified = None
    certified_count = None
    rectangle_count = None
    cert_window = None
    used_height = None
    if certify:
        eps0 = 0.5 * scan_step
        if zs:
            eps0 = min(eps0, 0.5 * zs[0])
        attempts = [
            (eps0, lam_max, cert_height),
            (0.71 * eps0, lam_max - 0.37 * scan_step, 1.083 * cert_height),
            (1.31 * eps0, lam_max - 0.83 * scan_step, 0.917 * cert_height),
            (0.47 * eps0, lam_max - 1.29 * scan_step, 1.217 * cert_height),
        ]
        last_err = None
        mismatch = None
        for x0, x1, hh in attempts:
            if x1 <= x0:
                continue
            expected = sum(mm for z, mm in zip(zs, mult) if x0 < z <= x1)
            near_edge = any(abs(z - x1) <= 4.0 * _EPS * max(1.0, x1) or
                            abs(z - x0) <= 4.0 * _EPS * max(1.0, x0) for z in zs)
            if near_edge:
                continue
            edge_n = max(64, int(4.0 * max(1.0, r) * (x1 - x0)),
                         int(4.0 * max(1.0, r) * 2.0 * hh))
            try:
                cnt = complex_zero_count(f_scalar, (x0, x1, -hh, hh),
                                         samples_per_edge=min(edge_n, 5000),
                                         f_vec=f_grid_complex)
            except ContourTooCloseError as err:
                last_err = err
                continue
            if cnt != expected:
                # a single rectangle's disagreement may be a sampling
                # artifact; trust it only if the jittered retries agree
                if mismatch is None:
                    mismatch = (cnt, expected, x0, x1, hh)
                continue
            rectangle_count = cnt
            certified = True
            certified_count = 2 * cnt
            cert_window = (x0, x1)
            used_height = hh
            if x1 < lam_max and any(z > x1 for z in zs):
                notes.append(
                    f"certificate window shrunk to ({x0:.6g}, {x1:.6g}]; "
                    "zeros beyond it are uncertified")
            break
        if certified is None:
            certified = False
            if mismatch is not None:
                cnt, expected, x0, x1, hh = mismatch
                rectangle_count = cnt
                certified_count = 2 * cnt
                cert_window = (x0, x1)
                used_height = hh
                notes.append(
                    f"rectangle count {cnt} disagrees with the {expected} "
                    "axis zeros (with multiplicity) in the window")
            else:
                notes.append(f"certification failed: {last_err}" if last_err
                             else "certification failed: no valid rectangle")

    return ZeroSet(zeros=tuple(zs), residuals=tuple(res),
                   multiplicities=tuple(mult),
                   window=(0.0, float(lam_max)), tol=float(tol),
                   scan_step=float(scan_step),
                   certified_count=certified_count,
                   rectangle_count=rectangle_count,
                   certified=certified,
                   cert_height=used_height,
                   cert_window=cert_window,
                   imag_zeros=imag_zeros, imag_residuals=imag_res,
                   imag_multiplicities=imag_mult, imag_window=imag_window,
                   origin_abs=origin_abs, origin_zero=origin_zero,
                   notes=tuple(notes))


# ---------------------------------------------------------------------------
# common zeros and the pair verdict

def _newton_polish(f, df, x0, tol, max_iter=60):
    """Newton iteration for a simple real root; returns (x, |f|) best seen."""
    x = float(x0)
    best_x, best_f = x, abs(float(f(x)))
    for _ in range(max_iter):
        fx = float(f(x))
        if abs(fx) < best_f:
            best_x, best_f = x, abs(fx)
        dfx = float(df(x))
        if dfx == 0.0:
            break
        step = fx / dfx
        x -= step
        if abs(step) <= 4.0 * _EPS * max(1.0, abs(x)):
            fx = abs(float(f(x)))
            if fx < best_f:
                best_x, best_f = x, fx
            break
    return best_x, best_f


def common_zero(params: SpaceParams, r1: float, r2: float, kind: DistKind,
                lam_max: float = 20.0, delta: float = 1e-6,
                cert_height: float = DEFAULT_CERT_HEIGHT,
                scan_step: float = DEFAULT_SCAN_STEP,
                tol: float = DEFAULT_ZERO_TOL,
                tol_series: float = 1e-12) -> PairVerdict:
    """Decide whether the two radii share a spectral zero in the window.

    Inadmissible requires a polished witness where both spectral factors
    vanish to tolerance; Admissible requires certified zero sets and all
    gaps above delta; everything else is Unknown (with notes).
    """
    Z1 = spectral_zero_set(params, r1, kind, lam_max, cert_height, scan_step,
                           tol, tol_series)
    Z2 = spectral_zero_set(params, r2, kind, lam_max, cert_height, scan_step,
                           tol, tol_series)
    mean_kind = kind is DistKind.MEAN_VALUE
    _, _, f1, f1r, _, _, df1 = _kind_function(params, kind, r1, tol_series)
    _, _, f2, f2r, _, _, df2 = _kind_function(params, kind, r2, tol_series)

    notes = list(Z1.notes) + list(Z2.notes)
    scope = (f"real window (0, {lam_max}], strip height {cert_height}"
             + (f", imaginary segment (0, {params.rho_f + 2.0}]" if mean_kind else ""))

    min_gap = math.inf
    witness = None
    witness_res = None

    def consider_axis(zs1, zs2, axis):
        nonlocal min_gap, witness, witness_res
        for z1 in zs1:
            for z2 in zs2:
                gap = abs(z1 - z2)
                min_gap = min(min_gap, gap)
                if gap >= delta or witness is not None:
                    continue
                mid = 0.5 * (z1 + z2)
                if axis == "real":
                    if mean_kind:
                        x_star, _ = _newton_polish(df1, _second_diff(df1), mid, tol)
                    else:
                        x_star, _ = _newton_polish(f1r, df1, mid, tol)
                    res1 = abs(f1(complex(x_star, 0.0)))
                    res2 = abs(f2(complex(x_star, 0.0)))
                    cand = complex(x_star, 0.0)
                else:
                    def g1(mu):
                        return (f1(complex(0.0, mu))).real

                    def g2(mu):
                        return (f2(complex(0.0, mu))).real

                    def dg1(mu):
                        return (1j * phi_dk(params, SpectralPoint(complex(0.0, mu), 1),
                                            r1, tol_series)).real

                    x_star, _ = _newton_polish(g1, dg1, mid, tol)
                    res1 = abs(g1(x_star))
                    res2 = abs(g2(x_star))
                    cand = complex(0.0, x_star)
                if res1 <= tol and res2 <= tol:
                    witness = cand
                    witness_res = (res1, res2)
                else:
                    notes.append(
                        f"near-coincidence at {cand:.9g} not confirmed "
                        f"(residuals {res1:.3g}, {res2:.3g})")

    consider_axis(Z1.zeros, Z2.zeros, "real")
    if mean_kind:
        consider_axis(Z1.imag_zeros, Z2.imag_zeros, "imag")
    if Z1.origin_zero and Z2.origin_zero:
        res1 = abs(f1(0.0 + 0.0j))
        res2 = abs(f2(0.0 + 0.0j))
        if witness is None and res1 <= tol and res2 <= tol:
            witness = 0.0 + 0.0j
            witness_res = (res1, res2)
            min_gap = 0.0

    if witness is not None:
        verdict = Admissibility.INADMISSIBLE
    elif not (Z1.certified and Z2.certified):
        verdict = Admissibility.UNKNOWN
        notes.append("a zero set failed certification")
    elif min_gap > delta:
        verdict = Admissibility.ADMISSIBLE
    else:
        verdict = Admissibility.UNKNOWN
        notes.append(
            f"zeros closer than delta = {delta} but residual check failed; "
            "below decision resolution")
    return PairVerdict(admissible=verdict, witness=witness,
                       witness_residuals=witness_res, min_gap=min_gap,
                       window=(0.0, float(lam_max)),
                       cert_height=float(cert_height), tol=float(tol),
                       delta=float(delta), scope=scope, notes=tuple(notes))


def _second_diff(df, h=1e-6):
    """Central-difference derivative of a callable, for tangent-witness polish."""
    def d2(x):
        return (df(x + h) - df(x - h)) / (2.0 * h)
    return d2


# ---------------------------------------------------------------------------
# radial zeros (counterexample generator support)

def radial_zeros(params: SpaceParams, lambda0: float, r_max: float,
                 kind: DistKind = DistKind.SPHERE,
                 scan_step: float = DEFAULT_SCAN_STEP,
                 tol: float = DEFAULT_ZERO_TOL,
                 tol_series: float = 1e-12):
    """Zeros in r of the kind's radial function at fixed real lambda0 > 0.

    Ball kind: phi_lambda0^(p,q+2)(r); Sphere kind: phi_lambda0^(p,q)(r);
    MeanValue kind: phi_lambda0(r) - 1 (tangencies; nonempty only when the
    real spectrum allows it, i.e. the degenerate rho = 0 case).
    Returns a sorted list of radii in (0, r_max].
    """
    lam = float(lambda0)
    if lam <= 0.0:
        raise DomainError(f"need lambda0 > 0, got {lambda0}")
    if not (0.0 < r_max <= 10.0):
        raise DomainError(f"need 0 < r_max <= 10, got {r_max}")
    if kind is DistKind.BALL:
        fp = params.shifted(2)
        offset = 0.0
    elif kind is DistKind.SPHERE:
        fp = params
        offset = 0.0
    else:
        fp = params
        offset = -1.0

    def f(r):
        return (phi(fp, lam, r, tol_series, abs_tol=_SERIES_ABS_TOL)
                + offset).real

    def f_grid(rs):
        return (phi_radial_grid(fp, lam, np.asarray(rs, dtype=np.float64),
                                tol_series) + offset).real

    if kind is DistKind.MEAN_VALUE:
        dr = 1e-6

        def df(r):
            return (f(r + dr) - f(r - dr)) / (2.0 * dr)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TangentZeroWarning)
            zs, _ = _scan_axis(f, r_max, scan_step, tol, f_grid)
        tz, _ = find_tangent_zeros(f, df, r_max, scan_step,
                                   max(tol, 1e-9), f_grid)
        allz = sorted(set(zs) | set(tz))
        return [float(z) for z in allz]
    zs, _ = _scan_axis(f, r_max, scan_step, tol, f_grid)
    return [float(z) for z in zs]
