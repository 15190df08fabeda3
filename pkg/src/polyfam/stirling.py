"""Stirling numbers of both kinds, with shared grow-on-demand triangles.

Tables are built row by row from the standard recurrences and kept as
module-level singletons; rows already built are immutable and can be read
concurrently, while growth is serialized by a lock (single writer).
"""

from __future__ import annotations

import threading
from enum import Enum
from fractions import Fraction
from typing import Sequence


class StirlingKind(Enum):
    SECOND = "second"
    FIRST_UNSIGNED = "first_unsigned"


class StirlingTable:
    """Triangular cache of Stirling numbers of one kind.

    SECOND:         {n+1, k} = k*{n, k} + {n, k-1}
    FIRST_UNSIGNED: [n+1, k] = n*[n, k] + [n, k-1]
    """

    def __init__(self, kind: StirlingKind):
        self.kind = kind
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    @property
    def built_rows(self) -> int:
        return len(self._rows)

    def _grow_to(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows) - 1  # index of the last built row
                prev = self._rows[-1]
                factor = (lambda k: k) if self.kind is StirlingKind.SECOND else (lambda k: m)
                row = [0] * (m + 2)
                for k in range(m + 2):
                    rec = factor(k) * prev[k] if k <= m else 0
                    low = prev[k - 1] if 1 <= k <= m + 1 else 0
                    row[k] = rec + low
                self._rows.append(tuple(row))

    def value(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError(f"Stirling numbers need n >= 0, got {n}")
        if k < 0 or k > n:
            return 0
        if n >= len(self._rows):
            self._grow_to(n)
        return self._rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError(f"Stirling numbers need n >= 0, got {n}")
        if n >= len(self._rows):
            self._grow_to(n)
        return self._rows[n]


_SECOND = StirlingTable(StirlingKind.SECOND)
_FIRST = StirlingTable(StirlingKind.FIRST_UNSIGNED)


def stirling2(n: int, k: int) -> int:
    """{n, k}: set partitions of an n-set into k nonempty blocks."""
    return _SECOND.value(n, k)


def stirling1_unsigned(n: int, k: int) -> int:
    """[n, k]: permutations of n elements with exactly k cycles."""
    return _FIRST.value(n, k)


def stirling1_signed(n: int, k: int) -> int:
    """s(n, k) = (-1)^(n-k) [n, k]."""
    return (-1) ** (n - k) * _FIRST.value(n, k)


def stirling_transform(a: Sequence[Fraction | int]) -> list[Fraction]:
    """b_n = sum_k {n, k} a_k, termwise over the input's index range."""
    seq = [Fraction(v) for v in a]
    return [
        sum((Fraction(stirling2(n, k)) * seq[k] for k in range(n + 1)), Fraction(0))
        for n in range(len(seq))
    ]


def inverse_stirling_transform(b: Sequence[Fraction | int]) -> list[Fraction]:
    """a_n = sum_k (-1)^(n-k) [n, k] b_k; inverse of :func:`stirling_transform`."""
    seq = [Fraction(v) for v in b]
    return [
        sum(
            (Fraction(stirling1_signed(n, k)) * seq[k] for k in range(n + 1)),
            Fraction(0),
        )
        for n in range(len(seq))
    ]
