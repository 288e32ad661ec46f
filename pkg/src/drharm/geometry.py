"""Geometric data of the harmonic spaces X^(p,q).

A space is parametrized by two nonnegative integers (p, q): it is a
one-dimensional solvable extension of a generalized Heisenberg group with a
p-dimensional "X" layer and a q-dimensional center, so dim X = p + q + 1 and
the half-sum-of-roots parameter is rho = p/4 + q/2.  The degenerate pair
(0, 0) is the Euclidean line.  Any integer pair p, q >= 0 is accepted; no
group-theoretic realizability check is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

from .errors import DomainError, QuadratureError

__all__ = [
    "SpaceParams",
    "gamma_half_int",
    "surface_coefficient",
    "sphere_area",
    "log_sphere_area",
    "sphere_area_logderiv",
    "ball_volume",
    "cheeger",
    "log_growth_estimate",
]


@dataclass(frozen=True)
class SpaceParams:
    """Integer parameter pair (p, q) of a space X^(p,q)."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise DomainError("p and q must be integers")
        if self.p < 0 or self.q < 0:
            raise DomainError(f"p and q must be >= 0, got ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        """Dimension p + q + 1."""
        return self.p + self.q + 1

    @property
    def rho(self) -> Fraction:
        """Exact rho = p/4 + q/2."""
        return Fraction(self.p, 4) + Fraction(self.q, 2)

    @property
    def rho_f(self) -> float:
        return float(self.rho)

    def shifted(self, dq: int = 2) -> "SpaceParams":
        """The center-shifted pair (p, q + dq) used by the ball transform."""
        return SpaceParams(self.p, self.q + dq)


def gamma_half_int(two_x: int) -> float:
    """Gamma(two_x / 2) for a positive integer two_x, by exact recursion.

    Built up from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1 so half-integer
    volume constants carry no special-function rounding beyond the final
    float operations.
    """
    if not isinstance(two_x, int) or two_x < 1:
        raise DomainError(f"need a positive integer two_x, got {two_x!r}")
    val = math.sqrt(math.pi) if two_x % 2 == 1 else 1.0
    k = 2 - (two_x % 2)  # start at Gamma(1/2) or Gamma(1)
    while k < two_x:
        val *= k / 2.0
        k += 2
    return val


def surface_coefficient(params: SpaceParams) -> float:
    """Leading constant 2^n pi^(n/2) / Gamma(n/2) of the sphere area."""
    n = params.n
    return 2.0**n * math.pi ** (n / 2.0) / gamma_half_int(n)


def sphere_area(params: SpaceParams, r: float) -> float:
    """Area of the geodesic sphere of radius r > 0.

    A(r) = 2^n pi^(n/2) / Gamma(n/2) * sinh(r/2)^(p+q) * cosh(r/2)^q.
    For (0, 0) this is the two-point "sphere" of the line, A = 2.
    Overflows for very large r; see log_sphere_area.
    """
    if r <= 0.0:
        raise DomainError(f"sphere radius must be > 0, got {r}")
    pq = params.p + params.q
    return (
        surface_coefficient(params)
        * math.sinh(r / 2.0) ** pq
        * math.cosh(r / 2.0) ** params.q
    )


def log_sphere_area(params: SpaceParams, r: float) -> float:
    """log A(r), stable for large r where A(r) itself overflows."""
    if r <= 0.0:
        raise DomainError(f"sphere radius must be > 0, got {r}")
    n = params.n
    pq = params.p + params.q
    out = n * math.log(2.0) + (n / 2.0) * math.log(math.pi) - math.lgamma(n / 2.0)
    if pq:
        # log sinh(x) = x + log1p(-exp(-2x)) - log 2
        x = r / 2.0
        out += pq * (x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0))
    if params.q:
        x = r / 2.0
        out += params.q * (x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0))
    return out


def sphere_area_logderiv(params: SpaceParams, r: float) -> float:
    """A'(r)/A(r) = (p+q)/2 coth(r/2) + q/2 tanh(r/2)."""
    if r <= 0.0:
        raise DomainError(f"need r > 0, got {r}")
    x = r / 2.0
    return (params.p + params.q) / (2.0 * math.tanh(x)) + params.q * math.tanh(x) / 2.0


def ball_volume(params: SpaceParams, r: float, rtol: float = 1e-11) -> float:
    """Volume of the geodesic ball of radius r > 0, by adaptive quadrature.

    vol B_r = integral_0^r A(s) ds.  At (0, 0) this is 2r.
    """
    if r <= 0.0:
        raise DomainError(f"ball radius must be > 0, got {r}")
    val, err = quad(lambda s: sphere_area(params, s), 0.0, r,
                    epsabs=1e-13, epsrel=rtol, limit=200)
    if not math.isfinite(val) or err > max(1e-10, 1e-7 * abs(val)):
        raise QuadratureError(
            f"ball volume quadrature did not converge (err {err:.3g})",
            estimate=val, achieved=err)
    return val


def cheeger(params: SpaceParams) -> float:
    """Cheeger / exponential volume growth constant 2 rho = lim log A(r) / r."""
    return float(2 * params.rho)


def log_growth_estimate(params: SpaceParams, r: float) -> float:
    """Finite-r growth quotient log A(r) / r; tends to 2 rho as r grows."""
    if r <= 0.0:
        raise DomainError(f"need r > 0, got {r}")
    return log_sphere_area(params, r) / r
