"""Registry and runner for the identity catalog.

Every identity is a pure checker mapping one grid point to a list of
(label, lhs, rhs) comparison pairs; a point passes when every pair is exactly
equal.  Points whose parameters fall outside an identity's domain are
reported ``skipped-domain`` with the reason, never silently passed.

The runner evaluates grid points independently (optionally across threads)
and always merges reports in canonical order (identity id, then the
lexicographic grid-point key), so output is byte-identical at any job count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterator

from . import families as fam
from .poly import Poly, poly_from_terms
from .rationals import binomial, factorial, gen_binomial, rational_str
from .series import Series, binomial_power
from .stirling import stirling1_unsigned, stirling2

F = Fraction

Pair = tuple[str, object, object]


class SkipDomain(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class UnknownIdentityError(KeyError):
    pass


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridConfig:
    """Desk-scale defaults for the verification grids."""

    nmax: int = 8
    mmax: int = 8
    nm_sum: int = 10          # joint bound on n + m
    gf_mmax: int = 4          # shift bound for generating-function checks
    ls: tuple[int, ...] = (1, 2, 3, 4)
    int_alphas: tuple[int, ...] = (1, 2, 3, 4)
    frac_alphas: tuple[Fraction, ...] = (F(1, 2), F(5, 2))
    # lambda=1 is part of the default grid so the classical specializations get
    # exercised; identities singular there report the point as skipped-domain
    lambdas: tuple[Fraction, ...] = (F(2), F(1, 3), F(-3), F(5), F(1))
    xs: tuple[Fraction, ...] = (F(1), F(-1, 2), F(2, 3))
    order: int = 12
    certify: bool = False     # set by the runner in lambda-certification mode

    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(F(a) for a in self.int_alphas) + tuple(self.frac_alphas)

    def nm_pairs(self) -> list[tuple[int, int]]:
        return [
            (n, m)
            for n in range(self.nmax + 1)
            for m in range(self.mmax + 1)
            if n + m <= self.nm_sum
        ]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    id: str
    params: dict[str, str]
    status: str               # "pass" | "fail" | "skipped-domain"
    lhs: str
    rhs: str
    micros: int
    reason: str = ""

    def sort_key(self) -> tuple:
        return (self.id, tuple(sorted(self.params.items())))

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "params": dict(sorted(self.params.items())),
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "micros": self.micros,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class Summary:
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def to_dict(self) -> dict:
        return {"pass": self.passed, "fail": self.failed, "skipped": self.skipped}


def render_value(v) -> str:
    if isinstance(v, (int, Fraction)):
        return rational_str(v)
    return str(v)


# ---------------------------------------------------------------------------
# identity definition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    slots: tuple[str, ...]
    points: Callable[[GridConfig], Iterator[dict]]
    check: Callable[[dict, GridConfig], list[Pair]]
    lambda_degree_bound: Callable[[GridConfig], int] | None = None


REGISTRY: dict[str, Identity] = {}


def _register(identity: Identity) -> None:
    if identity.id in REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id}")
    REGISTRY[identity.id] = identity


# value helpers ---------------------------------------------------------------

def _bern(n: int, l: int, lam: Fraction) -> Fraction:
    """Bernoulli-type number of order l: classical at lam=1, Apostol-type else."""
    if lam == 1:
        return fam.bernoulli_higher(n, l)
    return fam.apostol_bernoulli_higher(n, l, lam)


def _bern_poly(n: int, l: int, x0: Fraction, lam: Fraction) -> Fraction:
    if lam == 1:
        return fam.bernoulli_higher_poly(n, l, F(x0))
    return fam.apostol_bernoulli_poly(n, l, F(x0), lam)


def _need_euler_domain(lam: Fraction) -> None:
    if lam == -1:
        raise SkipDomain("lambda=-1 is a pole of the Euler-type families")


def _need_apostol_bernoulli_domain(lam: Fraction) -> None:
    if lam == 1:
        raise SkipDomain("lambda=1 not in domain; use bernoulli-higher")


def _euler_series_lhs(values, order: int) -> Series:
    return Series([values(n) / factorial(n) for n in range(order + 1)], order)


# degree-bound helpers for lambda certification -------------------------------
# Both sides of every lambda-bearing identity are rational functions of lambda
# whose numerator and denominator degrees are bounded by the largest index
# reached on the grid; 2*B over-covers the cross-multiplied degree.

def _deg_bound_rec(grid: GridConfig) -> int:
    b = grid.nmax + grid.mmax + max(grid.ls, default=1) + max(grid.int_alphas, default=1) + 2
    return 2 * b


def _deg_bound_gf(grid: GridConfig) -> int:
    b = grid.order + grid.gf_mmax + max(grid.ls, default=1) + max(grid.int_alphas, default=1) + 2
    return 2 * b


def certification_lambdas(bound: int) -> tuple[Fraction, ...]:
    """2*bound + 2 distinct rationals clear of the singular points 0, +-1."""
    return tuple(F(k) for k in range(2, 2 * bound + 4))


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def _pts_nm(grid: GridConfig) -> Iterator[dict]:
    for n, m in grid.nm_pairs():
        yield {"n": n, "m": m}


def _chk_spivey(pt, grid) -> list[Pair]:
    n, m = pt["n"], pt["m"]
    lhs = fam.exponential_poly(n + m)
    rhs = Poly.zero()
    for k in range(n + 1):
        phi_k = fam.exponential_poly(k)
        for j in range(m + 1):
            coef = binomial(n, k) * stirling2(m, j) * F(j) ** (n - k)
            if coef:
                rhs = rhs + Poly.monomial(j, coef) * phi_k
    return [("", lhs, rhs)]


def _pts_gf_x(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.gf_mmax + 1):
        for x in grid.xs:
            yield {"m": m, "x": x}


def _chk_gf_phi_shift(pt, grid) -> list[Pair]:
    m, x = pt["m"], F(pt["x"])
    order = grid.order
    lhs = _euler_series_lhs(lambda n: fam.exponential_poly(n + m)(x), order)
    rhs = fam.gf_exp_bell(x, order) * fam.exponential_poly(m).eval_series(Series.exp_t(1, order) * x)
    return [("", lhs, rhs)]


def _pts_x(grid: GridConfig) -> Iterator[dict]:
    for x in grid.xs:
        yield {"x": x}


def _chk_gf_phi_base(pt, grid) -> list[Pair]:
    x = F(pt["x"])
    order = grid.order
    lhs = _euler_series_lhs(lambda n: fam.exponential_poly(n)(x), order)
    return [("", lhs, fam.gf_exp_bell(x, order))]


def _pts_gf_alpha_x(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.gf_mmax + 1):
        for alpha in grid.alphas():
            for x in grid.xs:
                yield {"m": m, "alpha": alpha, "x": x}


def _chk_gf_w_shift(pt, grid) -> list[Pair]:
    m, alpha, x = pt["m"], F(pt["alpha"]), F(pt["x"])
    order = grid.order
    g = Series.one(order) - (Series.exp_t(1, order) - 1) * x
    arg = (Series.exp_t(1, order) * x) * g.inverse()
    rhs = binomial_power(g, -alpha) * fam.general_geometric(m, alpha).eval_series(arg)
    lhs = _euler_series_lhs(lambda n: fam.general_geometric(n + m, alpha)(x), order)
    return [("", lhs, rhs)]


def _pts_alpha_x(grid: GridConfig) -> Iterator[dict]:
    for alpha in grid.alphas():
        for x in grid.xs:
            yield {"alpha": alpha, "x": x}


def _chk_gf_w_base(pt, grid) -> list[Pair]:
    alpha, x = F(pt["alpha"]), F(pt["x"])
    order = grid.order
    lhs = _euler_series_lhs(lambda n: fam.general_geometric(n, alpha)(x), order)
    return [("", lhs, fam.gf_general_geometric(x, alpha, order))]


def _pts_gf_euler(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.gf_mmax + 1):
        for alpha in grid.alphas():
            for lam in grid.lambdas:
                yield {"m": m, "alpha": alpha, "lambda": lam}


def _chk_gf_apostol_euler_shift(pt, grid) -> list[Pair]:
    m, alpha, lam = pt["m"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    order = grid.order
    inv = (Series.exp_t(1, order) * lam + 1).inverse()
    pref = binomial_power(inv * (lam + 1), alpha)
    argument = (Series.exp_t(1, order) * (-lam)) * inv
    rhs = pref * fam.general_geometric(m, alpha).eval_series(argument)
    lhs = _euler_series_lhs(lambda n: fam.apostol_euler_mantissa(n + m, alpha, lam), order)
    return [("", lhs, rhs)]


def _pts_gf_bern(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.gf_mmax + 1):
        for l in grid.ls:
            for lam in grid.lambdas:
                yield {"m": m, "l": l, "lambda": lam}


def _chk_gf_apostol_bernoulli_shift(pt, grid) -> list[Pair]:
    m, l, lam = pt["m"], pt["l"], F(pt["lambda"])
    order = grid.order
    if lam != 1:
        inv = (Series.exp_t(1, order) * lam - 1).inverse()
        argument = (Series.exp_t(1, order) * (-lam)) * inv
        rhs = (inv**l) * fam.general_geometric(m, l).eval_series(argument) * factorial(l)
        lhs = _euler_series_lhs(
            lambda n: _bern(n + m + l, l, lam) / binomial(n + m + l, l), order
        )
        return [("", lhs, rhs)]
    # classical limit: the right side has a pole of order l+m at t=0, so the
    # comparison clears t^{l+m} and checks the nonnegative-degree coefficients
    shift = l + m
    if order < shift + 1:
        raise SkipDomain("series order too small for the pole-cleared comparison")
    r_series = Series.zero(order)
    for k, c in enumerate(fam.general_geometric(m, l).coeffs):
        if c:
            term = (
                (Series.t(order) ** (m - k))
                * Series.exp_t(k, order)
                * fam.gf_bernoulli_higher(l + k, order)
                * (c * F(-1) ** k)
            )
            r_series = r_series + term
    r_series = r_series * factorial(l)
    reduced = order - shift
    lhs = Series(
        [fam.bernoulli_higher(n + m + l, l) / (binomial(n + m + l, l) * factorial(n)) for n in range(reduced + 1)],
        reduced,
    )
    rhs = Series([r_series.coeff(n + shift) for n in range(reduced + 1)], reduced)
    return [("pole-cleared", lhs, rhs)]


def _pts_nm_alpha(grid: GridConfig) -> Iterator[dict]:
    for n, m in grid.nm_pairs():
        for alpha in grid.alphas():
            yield {"n": n, "m": m, "alpha": alpha}


def _chk_w_general_recurrence(pt, grid) -> list[Pair]:
    n, m, alpha = pt["n"], pt["m"], F(pt["alpha"])
    lhs = fam.general_geometric(n + m, alpha)
    rhs = Poly.zero()
    for k in range(m + 1):
        s = stirling2(m, k)
        if not s:
            continue
        base = s * gen_binomial(alpha + k - 1, k) * factorial(k)
        for j in range(n + 1):
            coef = base * binomial(n, j) * F(k) ** (n - j)
            if coef:
                rhs = rhs + Poly.monomial(k, coef) * fam.general_geometric(j, alpha + k)
    return [("", lhs, rhs)]


def _chk_w_explicit(pt, grid) -> list[Pair]:
    n, m = pt["n"], pt["m"]
    lhs = fam.geometric_poly(n + m)
    terms = []
    for k in range(m + 1):
        s = stirling2(m, k)
        if not s:
            continue
        for j in range(n + 1):
            c = s * binomial(n, j) * F(k) ** (n - j)
            if not c:
                continue
            for i in range(j + 1):
                s2 = stirling2(j, i)
                if s2:
                    terms.append((k + i, c * s2 * factorial(i + k)))
    return [("", lhs, poly_from_terms(terms))]


def _chk_fubini_explicit(pt, grid) -> list[Pair]:
    n, m = pt["n"], pt["m"]
    lhs = fam.fubini(n + m)
    rhs = F(0)
    for k in range(m + 1):
        for j in range(n + 1):
            for i in range(j + 1):
                rhs += stirling2(m, k) * binomial(n, j) * stirling2(j, i) * F(k) ** (n - j) * factorial(i + k)
    return [("", lhs, rhs)]


def _pts_nm_alpha_lam(grid: GridConfig) -> Iterator[dict]:
    for n, m in grid.nm_pairs():
        for alpha in grid.alphas():
            for lam in grid.lambdas:
                yield {"n": n, "m": m, "alpha": alpha, "lambda": lam}


def _chk_apostol_euler_recurrence(pt, grid) -> list[Pair]:
    n, m, alpha, lam = pt["n"], pt["m"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    b = fam.euler_prefactor_base(lam)
    lhs = fam.apostol_euler_mantissa(n + m, alpha, lam)
    rhs = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if not s:
            continue
        base = s * gen_binomial(alpha + k - 1, k) * (-lam) ** k * factorial(k) / 2**k * b**k
        for j in range(n + 1):
            rhs += base * binomial(n, j) * F(k) ** (n - j) * fam.apostol_euler_mantissa(j, alpha + k, lam)
    return [("", lhs, rhs)]


def _pts_m_alpha_lam(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.mmax + 1):
        for alpha in grid.alphas():
            for lam in grid.lambdas:
                yield {"m": m, "alpha": alpha, "lambda": lam}


def _chk_apostol_euler_explicit(pt, grid) -> list[Pair]:
    m, alpha, lam = pt["m"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    order = max(grid.order, m)
    lhs = fam.apostol_euler_mantissa(m, alpha, lam)
    pairs: list[Pair] = [
        ("mantissa-series", lhs, fam.gf_apostol_euler_mantissa(alpha, lam, order).egf_coeff(m))
    ]
    if alpha.denominator == 1:
        plain = fam.euler_prefactor_base(lam) ** alpha * lhs
        pairs.append(("plain-series", plain, fam.gf_apostol_euler(int(alpha), lam, order).egf_coeff(m)))
    return pairs


def _pts_nm_l_lam(grid: GridConfig) -> Iterator[dict]:
    for n, m in grid.nm_pairs():
        for l in grid.ls:
            for lam in grid.lambdas:
                yield {"n": n, "m": m, "l": l, "lambda": lam}


def _chk_apostol_bernoulli_recurrence(pt, grid) -> list[Pair]:
    n, m, l, lam = pt["n"], pt["m"], pt["l"], F(pt["lambda"])
    if lam != 1:
        lhs = fam.apostol_bernoulli_higher(n + m + l, l, lam) / (binomial(n + m + l, l) * l)
        rhs = F(0)
        for k in range(m + 1):
            s = stirling2(m, k)
            if not s:
                continue
            for j in range(n + 1):
                rhs += (
                    s
                    * binomial(n, j)
                    * (-lam) ** k
                    * F(k) ** (n - j)
                    / ((l + k) * binomial(l + k + j, j))
                    * fam.apostol_bernoulli_higher(l + k + j, l + k, lam)
                )
        return [("", lhs, rhs)]
    # classical limit: the order-(l+k) factors must stay fused with their e^{kt}
    # shift, which turns the inner sum into polynomial values at x=k
    lhs = fam.bernoulli_higher(n + m + l, l) / (binomial(n + m + l, l) * l)
    rhs = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            rhs += (
                s
                * F(-1) ** k
                / ((l + k) * binomial(n + l + k, n))
                * fam.bernoulli_higher_poly(n + l + k, k + l, k)
            )
    return [("classical-limit", lhs, rhs)]


def _pts_m_l(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.mmax + 1):
        for l in grid.ls:
            yield {"m": m, "l": l}


def _chk_bernoulli_higher_recurrence(pt, grid) -> list[Pair]:
    m, l = pt["m"], pt["l"]
    lhs1 = fam.bernoulli_higher(m + l, l)
    rhs1 = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            rhs1 += s * F(-1) ** k / (l + k) * fam.bernoulli_higher_poly(l + k, l + k, k)
    rhs1 *= l * binomial(m + l, l)
    lhs2 = fam.bernoulli_higher_poly(m + l, m + l, m)
    rhs2 = F(0)
    for k in range(m + 1):
        s = stirling1_unsigned(m, k)
        if s:
            rhs2 += F(-1) ** k * s / binomial(k + l, l) * fam.bernoulli_higher(k + l, l)
    rhs2 *= F(l + m, l)
    return [("diagonal-sum", lhs1, rhs1), ("inverse-transform", lhs2, rhs2)]


def _pts_m_l_lam(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.mmax + 1):
        for l in grid.ls:
            for lam in grid.lambdas:
                yield {"m": m, "l": l, "lambda": lam}


def _chk_apostol_bernoulli_diag_recurrence(pt, grid) -> list[Pair]:
    m, l, lam = pt["m"], pt["l"], F(pt["lambda"])
    _need_apostol_bernoulli_domain(lam)
    lhs = fam.apostol_bernoulli_higher(m + l, l, lam)
    rhs = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            rhs += s * (-lam) ** k / (l + k) * fam.apostol_bernoulli_higher(l + k, l + k, lam)
    rhs *= l * binomial(m + l, l)
    return [("", lhs, rhs)]


def _pts_n_l_lam(grid: GridConfig) -> Iterator[dict]:
    for n in range(grid.nmax + 1):
        for l in grid.ls:
            for lam in grid.lambdas:
                yield {"n": n, "l": l, "lambda": lam}


def _chk_apostol_bernoulli_explicit(pt, grid) -> list[Pair]:
    n, l, lam = pt["n"], pt["l"], F(pt["lambda"])
    _need_apostol_bernoulli_domain(lam)
    order = max(grid.order, n)
    pairs: list[Pair] = [
        ("closed-sum-vs-series",
         fam.apostol_bernoulli_higher(n, l, lam),
         fam.gf_apostol_bernoulli(l, lam, order).egf_coeff(n))
    ]
    if n == l:
        pairs.append(("diagonal", fam.apostol_bernoulli_higher(l, l, lam), F(factorial(l)) / (lam - 1) ** l))
    return pairs


def _pts_n_lam(grid: GridConfig) -> Iterator[dict]:
    for n in range(grid.nmax + 1):
        for lam in grid.lambdas:
            yield {"n": n, "lambda": lam}


def _chk_apostol_bernoulli_classical(pt, grid) -> list[Pair]:
    n, lam = pt["n"], F(pt["lambda"])
    _need_apostol_bernoulli_domain(lam)
    value = fam.apostol_bernoulli_higher(n, 1, lam)
    if n == 0:
        return [("vanishing-start", value, F(0))]
    ratio = lam / (1 - lam)
    geo = F(n) / (lam - 1) * fam.geometric_poly(n - 1)(ratio)
    explicit = F(n) / (lam - 1) * sum(
        (stirling2(n - 1, k) * factorial(k) * ratio**k for k in range(n)), F(0)
    )
    return [("geometric-eval", value, geo), ("stirling-sum", value, explicit)]


def _pts_connections(grid: GridConfig) -> Iterator[dict]:
    for n in range(grid.nmax + 1):
        for alpha in grid.alphas():
            for l in grid.ls:
                for lam in grid.lambdas:
                    yield {"n": n, "alpha": alpha, "l": l, "lambda": lam}


def _chk_w_connections(pt, grid) -> list[Pair]:
    n, alpha, l, lam = pt["n"], F(pt["alpha"]), pt["l"], F(pt["lambda"])
    pairs: list[Pair] = []
    if lam != -1:
        # Euler connection in mantissa form: the (lam+1)/2 powers cancel exactly
        pairs.append((
            "euler-connection",
            fam.general_geometric(n, alpha)(-lam / (lam + 1)),
            fam.apostol_euler_mantissa(n, alpha, lam),
        ))
    if lam != 1:
        pairs.append((
            "bernoulli-connection",
            fam.general_geometric(n, l)(-lam / (lam - 1)),
            (lam - 1) ** l / factorial(l) / binomial(n + l, l) * fam.apostol_bernoulli_higher(n + l, l, lam),
        ))
    if alpha == 1 and l == 1:
        pairs.append(("euler-value", fam.geometric_poly(n)(F(-1, 2)), fam.euler_classical(n)))
    if not pairs:
        raise SkipDomain("no connection defined at this parameter point")
    return pairs


def _pts_full(grid: GridConfig) -> Iterator[dict]:
    for n, m in grid.nm_pairs():
        for l in grid.ls:
            for alpha in grid.alphas():
                for lam in grid.lambdas:
                    yield {"n": n, "m": m, "l": l, "alpha": alpha, "lambda": lam}


def _chk_poly_shift_prop(pt, grid) -> list[Pair]:
    n, m, l, alpha, lam = pt["n"], pt["m"], pt["l"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    b = fam.euler_prefactor_base(lam)
    lhs_e = fam.apostol_euler_mantissa(n + m, alpha, lam)
    rhs_e = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            rhs_e += (
                s
                * gen_binomial(alpha + k - 1, k)
                * (-lam / 2) ** k
                * factorial(k)
                * b**k
                * fam.apostol_euler_poly_mantissa(n, alpha + k, F(k), lam)
            )
    lhs_b = _bern(n + m + l, l, lam) / binomial(n + m + l, l)
    rhs_b = F(0)
    for k in range(m + 1):
        s = stirling2(m, k)
        if s:
            rhs_b += (
                s
                * l
                * (-lam) ** k
                / ((l + k) * binomial(n + l + k, n))
                * _bern_poly(n + l + k, k + l, F(k), lam)
            )
    return [("euler-shift", lhs_e, rhs_e), ("bernoulli-shift", lhs_b, rhs_b)]


def _chk_poly_shift_theorem(pt, grid) -> list[Pair]:
    n, m, l, alpha, lam = pt["n"], pt["m"], pt["l"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    if lam == 0:
        raise SkipDomain("lambda=0: reciprocal parameter undefined")
    b = fam.euler_prefactor_base(lam)
    pairs: list[Pair] = []

    lhs_e = b**m * fam.apostol_euler_poly_mantissa(n, alpha + m, F(m), lam)
    rhs_e = (F(2) / lam) ** m / factorial(m) / gen_binomial(alpha + m - 1, m) * sum(
        (
            F(-1) ** k * stirling1_unsigned(m, k) * fam.apostol_euler_mantissa(n + k, alpha, lam)
            for k in range(m + 1)
        ),
        F(0),
    )
    pairs.append(("euler-shift", lhs_e, rhs_e))

    if lam == 1:
        refl = F(-1) ** n * fam.apostol_euler_poly_mantissa(n, alpha + m, alpha, F(1))
        pairs.append(("euler-reflection", fam.apostol_euler_poly_mantissa(n, alpha + m, F(m), F(1)), refl))
    elif alpha.denominator == 1:
        order_a = int(alpha) + m
        plain = b**order_a * fam.apostol_euler_poly_mantissa(n, F(order_a), F(m), lam)
        b_inv = fam.euler_prefactor_base(1 / lam)
        refl = (
            F(-1) ** n
            * lam ** (-order_a)
            * b_inv**order_a
            * fam.apostol_euler_poly_mantissa(n, F(order_a), alpha, 1 / lam)
        )
        pairs.append(("euler-reflection", plain, refl))

    lhs_b = _bern_poly(n + m + l, m + l, F(m), lam)
    rhs_b = F(l + m) / (l * lam**m) * binomial(n + m + l, n) * sum(
        (
            F(-1) ** k
            * stirling1_unsigned(m, k)
            / binomial(n + l + k, l)
            * _bern(n + l + k, l, lam)
            for k in range(m + 1)
        ),
        F(0),
    )
    pairs.append(("bernoulli-shift", lhs_b, rhs_b))

    refl_b = F(-1) ** (n + m + l) * lam ** (-(m + l)) * _bern_poly(n + m + l, m + l, F(l), 1 / lam)
    pairs.append(("bernoulli-reflection", lhs_b, refl_b))
    return pairs


def _chk_finite_sums(pt, grid) -> list[Pair]:
    m, l, alpha, lam = pt["m"], pt["l"], F(pt["alpha"]), F(pt["lambda"])
    _need_euler_domain(lam)
    pairs: list[Pair] = []
    lhs_e = sum(
        (F(-1) ** k * stirling1_unsigned(m, k) * fam.apostol_euler_mantissa(k, alpha, lam) for k in range(m + 1)),
        F(0),
    )
    rhs_e = lam**m * factorial(m) / (lam + 1) ** m * gen_binomial(alpha + m - 1, m)
    pairs.append(("euler-sum", lhs_e, rhs_e))
    if lam != 1:
        lhs_b = sum(
            (
                F(-1) ** k
                * stirling1_unsigned(m, k)
                / binomial(l + k, l)
                * fam.apostol_bernoulli_higher(l + k, l, lam)
                for k in range(m + 1)
            ),
            F(0),
        )
        rhs_b = l * lam**m * factorial(m + l - 1) / (lam - 1) ** (m + l)
        pairs.append(("bernoulli-sum", lhs_b, rhs_b))
    return pairs


def _pts_finite_sums(grid: GridConfig) -> Iterator[dict]:
    for m in range(grid.mmax + 1):
        for l in grid.ls:
            for alpha in grid.alphas():
                for lam in grid.lambdas:
                    yield {"m": m, "l": l, "alpha": alpha, "lambda": lam}


def _chk_diag_bernoulli_values(pt, grid) -> list[Pair]:
    m, l = pt["m"], pt["l"]
    n = m + l
    pairs: list[Pair] = []
    rhs = F(l + m, l) * sum(
        (
            F(-1) ** k * stirling1_unsigned(m, k) / binomial(l + k, l) * fam.bernoulli_higher(k + l, l)
            for k in range(m + 1)
        ),
        F(0),
    )
    pairs.append(("shifted-diagonal", fam.bernoulli_higher_poly(n, n, m), rhs))
    pairs.append(
        ("reflection", fam.bernoulli_higher_poly(n, n, n - l), F(-1) ** n * fam.bernoulli_higher_poly(n, n, l))
    )
    pairs.append(
        ("second-kind-link", fam.bernoulli_higher_poly(n, n, 1), factorial(n) * fam.bernoulli_second_kind(n))
    )
    if n >= 2:
        pairs.append(
            ("order-drop", fam.bernoulli_higher_poly(n, n, 1), fam.bernoulli_higher(n, n - 1) / (1 - n))
        )
    return pairs


def _pts_aux_euler(grid: GridConfig) -> Iterator[dict]:
    for n in range(grid.nmax + 1):
        for alpha in grid.alphas():
            for lam in grid.lambdas:
                for x in grid.xs:
                    yield {"n": n, "alpha": alpha, "lambda": lam, "x": x}


def _chk_aux_wang(pt, grid) -> list[Pair]:
    n, alpha, lam, x = pt["n"], F(pt["alpha"]), F(pt["lambda"]), F(pt["x"])
    _need_euler_domain(lam)
    b = fam.euler_prefactor_base(lam)
    lhs = alpha * lam / 2 * b * fam.apostol_euler_poly_mantissa(n, alpha + 1, x + 1, lam)
    rhs = x * fam.apostol_euler_poly_mantissa(n, alpha, x, lam) - fam.apostol_euler_poly_mantissa(n + 1, alpha, x, lam)
    return [("", lhs, rhs)]


def _pts_aux_bernoulli(grid: GridConfig) -> Iterator[dict]:
    for n in range(grid.nmax + 1):
        for alpha in grid.int_alphas:
            for lam in grid.lambdas:
                for x in grid.xs:
                    yield {"n": n, "alpha": alpha, "lambda": lam, "x": x}


def _chk_aux_srivastava_luo(pt, grid) -> list[Pair]:
    n, alpha, lam, x = pt["n"], int(pt["alpha"]), F(pt["lambda"]), F(pt["x"])
    lhs = alpha * lam * _bern_poly(n, alpha + 1, x + 1, lam)
    rhs = (n * x * _bern_poly(n - 1, alpha, x, lam) if n else F(0)) + (alpha - n) * _bern_poly(n, alpha, x, lam)
    return [("", lhs, rhs)]


def _chk_aux_euler_reflection(pt, grid) -> list[Pair]:
    n, alpha, lam, x = pt["n"], F(pt["alpha"]), F(pt["lambda"]), F(pt["x"])
    _need_euler_domain(lam)
    if lam == 0:
        raise SkipDomain("lambda=0: reciprocal parameter undefined")
    if lam == 1:
        lhs = fam.apostol_euler_poly_mantissa(n, alpha, alpha - x, F(1))
        rhs = F(-1) ** n * fam.apostol_euler_poly_mantissa(n, alpha, x, F(1))
        return [("", lhs, rhs)]
    if alpha.denominator != 1:
        raise SkipDomain("non-integer order with lambda != 1: prefactor powers are not rationally comparable")
    a = int(alpha)
    lhs = fam.euler_prefactor_base(lam) ** a * fam.apostol_euler_poly_mantissa(n, alpha, alpha - x, lam)
    rhs = (
        F(-1) ** n
        * lam ** (-a)
        * fam.euler_prefactor_base(1 / lam) ** a
        * fam.apostol_euler_poly_mantissa(n, alpha, x, 1 / lam)
    )
    return [("", lhs, rhs)]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_register(Identity(
    "spivey",
    "index-shift convolution for Bell polynomials, symbolic in x",
    ("n", "m"), _pts_nm, _chk_spivey,
))
_register(Identity(
    "gf-phi-shift",
    "shifted Bell-polynomial series equals the composed exponential series",
    ("m", "x"), _pts_gf_x, _chk_gf_phi_shift,
))
_register(Identity(
    "gf-phi-base",
    "Bell-polynomial series in exponential form",
    ("x",), _pts_x, _chk_gf_phi_base,
))
_register(Identity(
    "gf-w-shift",
    "shifted general geometric series equals the substituted binomial-power series",
    ("m", "alpha", "x"), _pts_gf_alpha_x, _chk_gf_w_shift,
))
_register(Identity(
    "gf-w-base",
    "general geometric series as a binomial power",
    ("alpha", "x"), _pts_alpha_x, _chk_gf_w_base,
))
_register(Identity(
    "gf-apostol-euler-shift",
    "shifted Euler-type number series via geometric polynomial substitution",
    ("m", "alpha", "lambda"), _pts_gf_euler, _chk_gf_apostol_euler_shift, _deg_bound_gf,
))
_register(Identity(
    "gf-apostol-bernoulli-shift",
    "shifted Bernoulli-type number series via geometric polynomial substitution",
    ("m", "l", "lambda"), _pts_gf_bern, _chk_gf_apostol_bernoulli_shift, _deg_bound_gf,
))
_register(Identity(
    "w-general-recurrence",
    "order-raising recurrence for general geometric polynomials, symbolic in x",
    ("n", "m", "alpha"), _pts_nm_alpha, _chk_w_general_recurrence,
))
_register(Identity(
    "w-explicit",
    "closed triple sum for geometric polynomials, symbolic in x",
    ("n", "m"), _pts_nm, _chk_w_explicit,
))
_register(Identity(
    "fubini-explicit",
    "closed triple sum for ordered Bell numbers",
    ("n", "m"), _pts_nm, _chk_fubini_explicit,
))
_register(Identity(
    "apostol-euler-recurrence",
    "order-raising recurrence for Euler-type numbers",
    ("n", "m", "alpha", "lambda"), _pts_nm_alpha_lam, _chk_apostol_euler_recurrence, _deg_bound_rec,
))
_register(Identity(
    "apostol-euler-explicit",
    "closed Stirling sum for Euler-type numbers against the series route",
    ("m", "alpha", "lambda"), _pts_m_alpha_lam, _chk_apostol_euler_explicit, _deg_bound_rec,
))
_register(Identity(
    "apostol-bernoulli-recurrence",
    "order-raising recurrence for Bernoulli-type numbers",
    ("n", "m", "l", "lambda"),
    _pts_nm_l_lam,
    _chk_apostol_bernoulli_recurrence, _deg_bound_rec,
))
_register(Identity(
    "bernoulli-higher-recurrence",
    "diagonal recurrences for higher-order Bernoulli numbers and their inverse transform",
    ("m", "l"), _pts_m_l, _chk_bernoulli_higher_recurrence,
))
_register(Identity(
    "apostol-bernoulli-diag-recurrence",
    "diagonal-order recurrence for Bernoulli-type numbers",
    ("m", "l", "lambda"),
    _pts_m_l_lam,
    _chk_apostol_bernoulli_diag_recurrence, _deg_bound_rec,
))
_register(Identity(
    "apostol-bernoulli-explicit",
    "closed Stirling sum for Bernoulli-type numbers against the series route",
    ("n", "l", "lambda"), _pts_n_l_lam, _chk_apostol_bernoulli_explicit, _deg_bound_rec,
))
_register(Identity(
    "apostol-bernoulli-classical",
    "first-order Bernoulli-type numbers through geometric polynomial values",
    ("n", "lambda"), _pts_n_lam, _chk_apostol_bernoulli_classical, _deg_bound_rec,
))
_register(Identity(
    "w-connections",
    "geometric polynomial values at distinguished points give the Euler/Bernoulli-type families",
    ("n", "alpha", "l", "lambda"), _pts_connections, _chk_w_connections, _deg_bound_rec,
))
_register(Identity(
    "poly-shift-prop",
    "shift of the second index into polynomial arguments, number form",
    ("n", "m", "l", "alpha", "lambda"), _pts_full, _chk_poly_shift_prop, _deg_bound_rec,
))
_register(Identity(
    "poly-shift-theorem",
    "inverse-transform shift into polynomial arguments, with reflections",
    ("n", "m", "l", "alpha", "lambda"), _pts_full, _chk_poly_shift_theorem, _deg_bound_rec,
))
_register(Identity(
    "finite-sums",
    "closed forms for alternating first-kind Stirling sums over both families",
    ("m", "l", "alpha", "lambda"), _pts_finite_sums, _chk_finite_sums, _deg_bound_rec,
))
_register(Identity(
    "diag-bernoulli-values",
    "diagonal higher-order Bernoulli polynomial values and the second-kind link",
    ("m", "l"), _pts_m_l, _chk_diag_bernoulli_values,
))
_register(Identity(
    "aux-wang",
    "order-raising relation for Euler-type polynomials",
    ("n", "alpha", "lambda", "x"), _pts_aux_euler, _chk_aux_wang, _deg_bound_rec,
))
_register(Identity(
    "aux-srivastava-luo",
    "order-raising relation for Bernoulli-type polynomials",
    ("n", "alpha", "lambda", "x"), _pts_aux_bernoulli, _chk_aux_srivastava_luo, _deg_bound_rec,
))
_register(Identity(
    "aux-euler-reflection",
    "reflection of Euler-type polynomials across half the order",
    ("n", "alpha", "lambda", "x"), _pts_aux_euler, _chk_aux_euler_reflection, _deg_bound_rec,
))


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def _perturb_value(v, rng: random.Random):
    if isinstance(v, (int, Fraction)):
        return Fraction(v) + 1
    if isinstance(v, Poly):
        k = rng.randrange(max(len(v.coeffs), 1))
        return v + Poly.monomial(k, 1)
    if isinstance(v, Series):
        k = rng.randrange(v.order + 1)
        return v + Series([0] * k + [1], v.order)
    if isinstance(v, fam.ScaledRational):
        return fam.ScaledRational(v.mantissa + 1, v.base, v.exponent)
    raise TypeError(f"cannot perturb {type(v).__name__}")


def _evaluate_point(identity: Identity, pt: dict, grid: GridConfig,
                    perturb: bool, timing: bool) -> IdentityReport:
    params = {k: rational_str(v) if isinstance(v, Fraction) else str(v) for k, v in pt.items()}
    started = time.perf_counter() if timing else 0.0
    try:
        pairs = identity.check(pt, grid)
    except SkipDomain as skip:
        micros = int((time.perf_counter() - started) * 1e6) if timing else 0
        return IdentityReport(identity.id, params, "skipped-domain", "", "", micros, skip.reason)
    if perturb:
        rng = random.Random(f"{identity.id}|{sorted(params.items())!r}")
        idx = rng.randrange(len(pairs))
        label, lhs, rhs = pairs[idx]
        if rng.random() < 0.5:
            pairs[idx] = (label, _perturb_value(lhs, rng), rhs)
        else:
            pairs[idx] = (label, lhs, _perturb_value(rhs, rng))
    status = "pass" if all(lhs == rhs for _, lhs, rhs in pairs) else "fail"
    if len(pairs) == 1 and pairs[0][0] == "":
        lhs_s, rhs_s = render_value(pairs[0][1]), render_value(pairs[0][2])
    else:
        lhs_s = "; ".join(f"{lb}={render_value(lv)}" for lb, lv, _ in pairs)
        rhs_s = "; ".join(f"{lb}={render_value(rv)}" for lb, _, rv in pairs)
    micros = int((time.perf_counter() - started) * 1e6) if timing else 0
    return IdentityReport(identity.id, params, status, lhs_s, rhs_s, micros)


def get_identity(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None


def identity_grid_for(identity: Identity, grid: GridConfig) -> tuple[GridConfig, int | None]:
    """Apply lambda-certification (when requested) to one identity's grid."""
    if not grid.certify or identity.lambda_degree_bound is None or "lambda" not in identity.slots:
        return grid, None
    bound = identity.lambda_degree_bound(grid)
    return replace(grid, lambdas=certification_lambdas(bound)), bound


def run_identity(identity_id: str, grid: GridConfig | None = None, *,
                 perturb: bool = False, timing: bool = False,
                 jobs: int = 1) -> list[IdentityReport]:
    identity = get_identity(identity_id)
    grid = grid or GridConfig()
    pt_grid, _ = identity_grid_for(identity, grid)
    tasks = [(identity, pt) for pt in identity.points(pt_grid)]
    return _run_tasks(tasks, pt_grid, perturb, timing, jobs)


def _run_tasks(tasks, grid, perturb, timing, jobs) -> list[IdentityReport]:
    if jobs <= 1 or len(tasks) <= 1:
        reports = [_evaluate_point(ident, pt, grid, perturb, timing) for ident, pt in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda t: _evaluate_point(t[0], t[1], grid, perturb, timing), tasks))
    reports.sort(key=IdentityReport.sort_key)
    return reports


def run_all(grid: GridConfig | None = None, ids: list[str] | None = None, *,
            perturb: bool = False, timing: bool = False,
            jobs: int = 1) -> tuple[Summary, list[IdentityReport], dict[str, int]]:
    grid = grid or GridConfig()
    selected = sorted(REGISTRY) if ids is None else sorted(ids)
    bounds: dict[str, int] = {}
    reports: list[IdentityReport] = []
    for identity_id in selected:
        identity = get_identity(identity_id)
        pt_grid, bound = identity_grid_for(identity, grid)
        if bound is not None:
            bounds[identity_id] = bound
        tasks = [(identity, pt) for pt in identity.points(pt_grid)]
        reports.extend(_run_tasks(tasks, pt_grid, perturb, timing, jobs))
    reports.sort(key=IdentityReport.sort_key)
    summary = Summary(
        passed=sum(r.status == "pass" for r in reports),
        failed=sum(r.status == "fail" for r in reports),
        skipped=sum(r.status == "skipped-domain" for r in reports),
    )
    return summary, reports, bounds
