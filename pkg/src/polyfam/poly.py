"""Dense univariate polynomials over exact rationals.

Coefficients are stored low degree first with no trailing zeros (the zero
polynomial is the empty tuple).  Values are immutable; every operation
returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import rational_str


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        self._c = _strip([Fraction(c) for c in coeffs])

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def monomial(k: int, coeff: Fraction | int = 1) -> "Poly":
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return Poly([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: "Poly | Fraction | int") -> "Poly":
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._c])

    def __sub__(self, other: "Poly | Fraction | int") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "Poly | Fraction | int") -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: "Poly | Fraction | int") -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._c])
        out = [Fraction(0)] * (len(self._c) + len(other._c))
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("polynomial powers must be >= 0")
        out, base = Poly.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __call__(self, v: Fraction | int) -> Fraction:
        """Exact Horner evaluation."""
        acc = Fraction(0)
        v = Fraction(v)
        for c in reversed(self._c):
            acc = acc * v + c
        return acc

    def eval_series(self, s):
        """Horner evaluation at a truncated power series (see series.Series)."""
        from .series import Series

        acc = Series.constant(0, s.order)
        for c in reversed(self._c):
            acc = acc * s + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self._c)][1:])

    def coeff_strings(self) -> list[str]:
        return [rational_str(c) for c in self._c]

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            if i == 0:
                term = rational_str(c)
            else:
                mag = abs(c)
                var = "x" if i == 1 else f"x^{i}"
                term = var if mag == 1 else f"{rational_str(mag)}{var}"
                term = ("-" if c < 0 else "") + term
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _as_poly(v: "Poly | Fraction | int") -> Poly:
    if isinstance(v, Poly):
        return v
    return Poly((Fraction(v),))


def poly_from_terms(terms: Sequence[tuple[int, Fraction | int]]) -> Poly:
    """Build a polynomial from (degree, coefficient) pairs, summing repeats."""
    out: dict[int, Fraction] = {}
    for k, c in terms:
        out[k] = out.get(k, Fraction(0)) + Fraction(c)
    if not out:
        return Poly.zero()
    top = max(out)
    return Poly([out.get(i, Fraction(0)) for i in range(top + 1)])
