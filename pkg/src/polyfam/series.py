"""Truncated formal power series in t over exact rationals.

Every series carries its truncation order explicitly: coefficients are exact
through t^order and unknown beyond it.  Arithmetic between two series is only
claimed up to the smaller of the two orders, so precision never inflates
silently.  Multiplication is schoolbook convolution; the orders used here
(a few dozen) make anything fancier pointless.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from .rationals import DomainError, gen_binomial, rational_str


class Series:
    __slots__ = ("_order", "_c")

    def __init__(self, coeffs: Iterable[Fraction | int], order: int | None = None):
        c = [Fraction(v) for v in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        self._order = order
        self._c = tuple(c)

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(order: int) -> "Series":
        return Series((), order)

    @staticmethod
    def one(order: int) -> "Series":
        return Series((1,), order)

    @staticmethod
    def constant(c: Fraction | int, order: int) -> "Series":
        return Series((c,), order)

    @staticmethod
    def t(order: int) -> "Series":
        return Series((0, 1), order)

    @staticmethod
    def exp_t(c: Fraction | int, order: int) -> "Series":
        """e^{c t} truncated."""
        c = Fraction(c)
        return Series([c**n / factorial(n) for n in range(order + 1)], order)

    # -- accessors ----------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def coeff(self, n: int) -> Fraction:
        if not 0 <= n <= self._order:
            raise IndexError(f"coefficient {n} beyond valid order {self._order}")
        return self._c[n]

    def egf_coeff(self, n: int) -> Fraction:
        """n! * [t^n], the value the series encodes in exponential form."""
        return factorial(n) * self.coeff(n)

    def truncate(self, order: int) -> "Series":
        if order > self._order:
            raise ValueError(f"cannot extend order {self._order} to {order}")
        return Series(self._c[: order + 1], order)

    # -- ring operations ----------------------------------------------
    def _common(self, other: "Series") -> int:
        return min(self._order, other._order)

    def __add__(self, other: "Series | Fraction | int") -> "Series":
        if isinstance(other, (int, Fraction)):
            other = Series.constant(other, self._order)
        n = self._common(other)
        return Series([self._c[i] + other._c[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self._c], self._order)

    def __sub__(self, other: "Series | Fraction | int") -> "Series":
        if isinstance(other, (int, Fraction)):
            other = Series.constant(other, self._order)
        return self + (-other)

    def __rsub__(self, other: "Series | Fraction | int") -> "Series":
        return (-self) + other

    def __mul__(self, other: "Series | Fraction | int") -> "Series":
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self._c], self._order)
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self._c[i]
            if a:
                for j in range(n + 1 - i):
                    b = other._c[j]
                    if b:
                        out[i + j] += a * b
        return Series(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inverse() ** (-e)
        out = Series.one(self._order)
        base = self
        while e:
            if e & 1:
                out = out * base
            if e > 1:
                base = base * base
            e >>= 1
        return out

    def inverse(self) -> "Series":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self._c[0] == 0:
            raise DomainError("series with zero constant term has no inverse")
        n = self._order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self._c[0]
        for i in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, i + 1):
                if self._c[k]:
                    acc += self._c[k] * out[i - k]
            out[i] = -acc / self._c[0]
        return Series(out, n)

    def exp(self) -> "Series":
        """exp of a series with zero constant term: sum_j self^j / j!."""
        if self._c[0] != 0:
            raise DomainError("series exponential needs a zero constant term")
        n = self._order
        out = Series.one(n)
        p = Series.one(n)
        for j in range(1, n + 1):
            p = p * self
            out = out + p * Fraction(1, factorial(j))
        return out

    def derivative(self) -> "Series":
        if self._order == 0:
            return Series.zero(0)
        return Series([i * self._c[i] for i in range(1, self._order + 1)], self._order - 1)

    # -- equality and rendering ----------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Series) and self._order == other._order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self._order, self._c))

    def coeff_strings(self) -> list[str]:
        return [rational_str(c) for c in self._c]

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self._c):
            if n == 0:
                parts.append(rational_str(c))
            elif c:
                var = "t" if n == 1 else f"t^{n}"
                parts.append(f"{rational_str(c)} {var}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Series(order={self._order}, {self})"


def exp_series(u: Series) -> Series:
    return u.exp()


def series_inverse(a: Series) -> Series:
    return a.inverse()


def binomial_power(a: Series, r: Fraction | int) -> Series:
    """(1 + u)^r for a = 1 + u with any rational exponent r.

    The base must have constant term exactly 1; callers with a different unit
    constant factor it out first (a rational power of a general constant is
    not rational, so it cannot live inside this module).
    """
    if a.coeffs[0] != 1:
        raise DomainError("binomial_power needs constant term 1 (normalize first)")
    r = Fraction(r)
    n = a.order
    u = a - Series.one(n)
    out = Series.zero(n)
    p = Series.one(n)
    for j in range(n + 1):
        out = out + p * gen_binomial(r, j)
        if j < n:
            p = p * u
    return out


def log1p_series(order: int) -> Series:
    """log(1 + t) = t - t^2/2 + t^3/3 - ... truncated."""
    if order < 1:
        raise ValueError("log(1+t) needs order >= 1")
    return Series([Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)], order)


def expm1_over_t(order: int) -> Series:
    """(e^t - 1)/t = sum_k t^k/(k+1)! truncated."""
    return Series([Fraction(1, factorial(k + 1)) for k in range(order + 1)], order)
