"""Exact scalar arithmetic: rationals, factorials, binomial coefficients.

The scalar type used everywhere in this package is ``fractions.Fraction``,
which already guarantees the invariants we rely on (lowest terms, positive
denominator, exact arithmetic on arbitrary-precision integers).  This module
adds the combinatorial helpers and the canonical string form used by the CLI
and the report files.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class DomainError(ValueError):
    """A value lies outside the mathematical domain of an operation."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational.

    Decimal notation is rejected on purpose: every numeral in this package is
    exact, and ``0.1`` does not mean what the user thinks it means.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise DomainError(f"not an exact rational (use p/q or integer form): {text!r}")
    return Fraction(s)


def rational_str(value: Fraction | int) -> str:
    """Canonical form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(value))


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with the convention 0 for k < 0 or k > n."""
    if n < 0:
        raise DomainError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def gen_binomial(r: Fraction | int, k: int) -> Fraction:
    """Generalized binomial coefficient C(r, k) = r(r-1)...(r-k+1)/k!.

    Computed as the exact falling-factorial product, so it is valid for any
    rational upper argument (including negative ones).
    """
    if k < 0:
        raise DomainError(f"gen_binomial requires k >= 0, got {k}")
    r = Fraction(r)
    num = Fraction(1)
    for i in range(k):
        num *= r - i
    return num / math.factorial(k)
