"""Truncated Taylor (jet) arithmetic.

A Jet stores Taylor coefficients c_j = f^(j)(t0)/j! about a real center, up
to a finite order.  Products truncate to the shorter operand; derivatives
drop the order by one.  This is the mechanism for the nested differential
operators of the inverse dual Abel transform (in the variable t = cosh r)
and, in plain-array form, for lambda-derivatives of spherical-function
series coefficients.

Fractional powers of the two linear factors (t-1) and (t+1) have closed-form
jets (generalized binomial series); both factors are positive for t > 1, the
only regime used.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = ["Jet", "linpow_jet", "w_of_t_jet", "conv_trunc"]


def conv_trunc(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """Truncated Cauchy product of coefficient arrays, length order+1."""
    out = np.zeros(order + 1, np.complex128)
    na = min(len(a), order + 1)
    for j in range(na):
        aj = a[j]
        if aj == 0.0:
            continue
        nb = min(len(b), order + 1 - j)
        out[j:j + nb] += aj * b[:nb]
    return out


class Jet:
    """Taylor polynomial of a function about a fixed real center."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center: float, coeffs):
        self.center = float(center)
        self.coeffs = np.asarray(coeffs, dtype=np.complex128)
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise DomainError("jet coefficients must be a nonempty 1-d array")

    @classmethod
    def constant(cls, value, center: float, order: int) -> "Jet":
        c = np.zeros(order + 1, np.complex128)
        c[0] = value
        return cls(center, c)

    @classmethod
    def variable(cls, center: float, order: int) -> "Jet":
        """The identity function t at the given center."""
        c = np.zeros(order + 1, np.complex128)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(center, c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def _check_center(self, other: "Jet"):
        if self.center != other.center:
            raise DomainError("jets have different centers")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check_center(other)
            m = min(self.order, other.order)
            return Jet(self.center, self.coeffs[:m + 1] + other.coeffs[:m + 1])
        c = self.coeffs.copy()
        c[0] += other
        return Jet(self.center, c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_center(other)
            m = min(self.order, other.order)
            return Jet(self.center, conv_trunc(self.coeffs, other.coeffs, m))
        return Jet(self.center, self.coeffs * complex(other))

    __rmul__ = __mul__

    def deriv(self) -> "Jet":
        """d/dt, one order lower."""
        if self.order == 0:
            raise DomainError("cannot differentiate an order-0 jet")
        j = np.arange(1, self.order + 1)
        return Jet(self.center, self.coeffs[1:] * j)

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.center, self.coeffs[:order + 1])

    def __repr__(self):
        return f"Jet(center={self.center}, coeffs={self.coeffs!r})"


def linpow_jet(center: float, shift: float, alpha: float, order: int) -> Jet:
    """Jet of (t + shift)^alpha at the center; requires center + shift > 0."""
    base = center + shift
    if base <= 0.0:
        raise DomainError(f"(t + {shift})^alpha needs t + shift > 0, got {base}")
    c = np.empty(order + 1, np.complex128)
    c[0] = base ** alpha
    for j in range(1, order + 1):
        c[j] = c[j - 1] * (alpha - (j - 1)) / (j * base)
    return Jet(center, c)


def w_of_t_jet(center: float, order: int) -> Jet:
    """Jet of w(t) = (t-1)/(t+1) at a center > 1 (w = tanh^2(r/2) at t = cosh r)."""
    if center <= 1.0:
        raise DomainError(f"need t > 1, got {center}")
    g = 1.0 / (center + 1.0)
    c = np.empty(order + 1, np.complex128)
    c[0] = (center - 1.0) * g
    sign = 1.0
    gp = g
    for j in range(1, order + 1):
        sign = -sign
        gp *= g
        c[j] = -2.0 * sign * gp
    return Jet(center, c)
