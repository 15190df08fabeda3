"""Number and polynomial families, each reachable by independent routes.

Families are memoized pure functions over exact rationals.  Wherever a family
has both a closed-sum route and a generating-series route, both are exposed so
the two can be cross-checked; the series builders here are also what the CLI
``series`` subcommand prints.

Order-``a`` Euler-type values for non-integer rational ``a`` carry the shared
irrational prefactor ``(2/(lam+1))^a``; such values are represented as a
:class:`ScaledRational` (mantissa times a formal rational power of a rational
base), and all identity checks on them compare mantissas after normalizing to
a common exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from .poly import Poly
from .rationals import DomainError, binomial, factorial, gen_binomial, rational_str
from .series import Series, binomial_power, expm1_over_t
from .stirling import stirling2

Rat = Fraction


# ---------------------------------------------------------------------------
# scaled rationals: mantissa * base^exponent with rational exponent
# ---------------------------------------------------------------------------

def scaled(mantissa: Rat | int, base: Rat | int, exponent: Rat | int):
    """Canonical mantissa*base^exponent; collapses to a plain Fraction when
    the power is rational (integer exponent, base 1, or zero mantissa)."""
    mantissa, base, exponent = Fraction(mantissa), Fraction(base), Fraction(exponent)
    if mantissa == 0:
        return Fraction(0)
    if base == 1 or exponent == 0:
        return mantissa
    if base == 0:
        if exponent < 0:
            raise DomainError("0 raised to a negative exponent")
        return Fraction(0) if exponent > 0 else mantissa
    whole = floor(exponent)
    frac = exponent - whole
    mantissa *= base**whole
    if frac == 0:
        return mantissa
    return ScaledRational(mantissa, base, frac)


@dataclass(frozen=True)
class ScaledRational:
    """mantissa * base^exponent with exponent in (0, 1); build via scaled()."""

    mantissa: Rat
    base: Rat
    exponent: Rat

    def __mul__(self, other: Rat | int) -> "ScaledRational | Rat":
        if isinstance(other, ScaledRational):
            if other.base != self.base:
                raise DomainError("cannot multiply scaled values over different bases")
            return scaled(self.mantissa * other.mantissa, self.base, self.exponent + other.exponent)
        return scaled(self.mantissa * Fraction(other), self.base, self.exponent)

    __rmul__ = __mul__

    def __add__(self, other: "ScaledRational") -> "ScaledRational | Rat":
        if not isinstance(other, ScaledRational) or (self.base, self.exponent) != (other.base, other.exponent):
            raise DomainError("can only add scaled values with matching base and exponent")
        return scaled(self.mantissa + other.mantissa, self.base, self.exponent)

    def __neg__(self) -> "ScaledRational":
        return ScaledRational(-self.mantissa, self.base, self.exponent)

    def __str__(self) -> str:
        return f"{rational_str(self.mantissa)}*({rational_str(self.base)})^({rational_str(self.exponent)})"


# ---------------------------------------------------------------------------
# exponential (Bell) polynomials and numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def exponential_poly(n: int) -> Poly:
    """phi_n(x) = sum_k {n,k} x^k."""
    return Poly([stirling2(n, k) for k in range(n + 1)])


@lru_cache(maxsize=None)
def exponential_poly_recurrence(n: int) -> Poly:
    """Same polynomial by phi_{n+1} = x (phi_n + phi_n'); independent route."""
    if n == 0:
        return Poly.one()
    prev = exponential_poly_recurrence(n - 1)
    return Poly.x() * (prev + prev.derivative())


def bell(n: int) -> Rat:
    return exponential_poly(n)(1)


def complementary_bell(n: int) -> Rat:
    return exponential_poly(n)(-1)


# ---------------------------------------------------------------------------
# geometric (Fubini) polynomials, plain and general
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def geometric_poly(n: int) -> Poly:
    """w_n(x) = sum_k {n,k} k! x^k."""
    return Poly([stirling2(n, k) * factorial(k) for k in range(n + 1)])


def fubini(n: int) -> Rat:
    return geometric_poly(n)(1)


@lru_cache(maxsize=None)
def general_geometric(n: int, alpha: Rat) -> Poly:
    """w_{n,a}(x) = sum_k {n,k} C(a+k-1, k) k! x^k for rational a > 0."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError(f"general geometric polynomials need alpha > 0, got {alpha}")
    return Poly(
        [stirling2(n, k) * gen_binomial(alpha + k - 1, k) * factorial(k) for k in range(n + 1)]
    )


def euler_classical(n: int) -> Rat:
    """E_n in the polynomial-at-zero convention; equals w_n(-1/2)."""
    return geometric_poly(n)(Fraction(-1, 2))


# ---------------------------------------------------------------------------
# higher-order Bernoulli numbers/polynomials (series route is canonical)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_series(l: int, order: int) -> Series:
    """(t/(e^t - 1))^l truncated."""
    return expm1_over_t(order).inverse() ** l


@lru_cache(maxsize=None)
def bernoulli_higher(n: int, l: int = 1) -> Rat:
    """B_n of order l, as n! [t^n] (t/(e^t-1))^l."""
    if n < 0 or l < 1:
        raise DomainError("bernoulli_higher needs n >= 0 and integer order l >= 1")
    return _bernoulli_series(l, max(n, 1)).egf_coeff(n)


def bernoulli_classical(n: int) -> Rat:
    return bernoulli_higher(n, 1)


@lru_cache(maxsize=None)
def bernoulli_higher_poly(n: int, l: int, x0: Rat) -> Rat:
    """B_n^{(l)}(x0) = sum_k C(n,k) B_k^{(l)} x0^{n-k}."""
    x0 = Fraction(x0)
    return sum(
        (binomial(n, k) * bernoulli_higher(k, l) * x0 ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def bernoulli_higher_poly_in_x(n: int, l: int) -> Poly:
    acc = Poly.zero()
    for k in range(n + 1):
        acc = acc + Poly.monomial(n - k, binomial(n, k) * bernoulli_higher(k, l))
    return acc


@lru_cache(maxsize=None)
def bernoulli_second_kind(n: int) -> Rat:
    """c_n = [t^n] of t/log(1+t)."""
    if n < 0:
        raise DomainError("bernoulli_second_kind needs n >= 0")
    order = max(n, 1)
    log_over_t = Series(
        [Fraction((-1) ** k, k + 1) for k in range(order + 1)], order
    )
    return log_over_t.inverse().coeff(n)


# ---------------------------------------------------------------------------
# Apostol-Bernoulli numbers/polynomials of higher order (lam != 1)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def apostol_bernoulli_higher(n: int, l: int, lam: Rat) -> Rat:
    """Closed-sum route; zero for n < l, matching the t-adic valuation of the
    generating series (t/(lam e^t - 1))^l for lam != 1."""
    lam = Fraction(lam)
    if lam == 1:
        raise DomainError("lambda=1 not in domain; use bernoulli-higher")
    if l < 1:
        raise DomainError("order l must be a positive integer")
    if n < l:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n - l + 1):
        acc += (
            stirling2(n - l, k)
            * gen_binomial(l + k - 1, k)
            * (-lam) ** k
            * factorial(k)
            / (lam - 1) ** (l + k)
        )
    return factorial(l) * binomial(n, l) * acc


@lru_cache(maxsize=None)
def apostol_bernoulli_poly(n: int, l: int, x0: Rat, lam: Rat) -> Rat:
    x0 = Fraction(x0)
    return sum(
        (binomial(n, k) * apostol_bernoulli_higher(k, l, lam) * x0 ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# Apostol-Euler numbers/polynomials of higher (rational) order
# ---------------------------------------------------------------------------
# Values factor as (2/(lam+1))^alpha * mantissa with rational mantissa; the
# mantissa functions are the workhorses, the public ones wrap in scaled().

def euler_prefactor_base(lam: Rat) -> Rat:
    return Fraction(2) / (Fraction(lam) + 1)


@lru_cache(maxsize=None)
def apostol_euler_mantissa(n: int, alpha: Rat, lam: Rat) -> Rat:
    """M with E_n^{(a)}(lam) = (2/(lam+1))^a M; closed Stirling sum."""
    lam, alpha = Fraction(lam), Fraction(alpha)
    if lam == -1:
        raise DomainError("lambda=-1 is a pole of the Euler-type families")
    acc = Fraction(0)
    for k in range(n + 1):
        acc += (
            stirling2(n, k)
            * gen_binomial(alpha + k - 1, k)
            * factorial(k)
            * (-lam) ** k
            / (lam + 1) ** k
        )
    return acc


@lru_cache(maxsize=None)
def apostol_euler_poly_mantissa(n: int, alpha: Rat, x0: Rat, lam: Rat) -> Rat:
    x0 = Fraction(x0)
    return sum(
        (binomial(n, k) * apostol_euler_mantissa(k, alpha, lam) * x0 ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def apostol_euler_higher(n: int, alpha: Rat, lam: Rat):
    """E_n^{(a)}(lam); plain Fraction for integer a (or lam=1), else scaled."""
    return scaled(apostol_euler_mantissa(n, alpha, lam), euler_prefactor_base(lam), alpha)


def apostol_euler_poly(n: int, alpha: Rat, x0: Rat, lam: Rat):
    return scaled(apostol_euler_poly_mantissa(n, alpha, x0, lam), euler_prefactor_base(lam), alpha)


def euler_higher(n: int, alpha: Rat) -> Rat:
    """E_n of order a at lam=1, plainly rational for every rational a > 0."""
    return apostol_euler_mantissa(n, alpha, Fraction(1))


# ---------------------------------------------------------------------------
# generating-series builders (series route + CLI `series` subcommand)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def gf_exp_bell(x: Rat, order: int) -> Series:
    """e^{x(e^t - 1)}."""
    u = (Series.exp_t(1, order) - 1) * Fraction(x)
    return u.exp()


@lru_cache(maxsize=None)
def gf_general_geometric(x: Rat, alpha: Rat, order: int) -> Series:
    """(1 - x(e^t - 1))^{-alpha}, exact for any rational alpha."""
    g = Series.one(order) - (Series.exp_t(1, order) - 1) * Fraction(x)
    return binomial_power(g, -Fraction(alpha))


def gf_geometric(x: Rat, order: int) -> Series:
    return gf_general_geometric(x, Fraction(1), order)


@lru_cache(maxsize=None)
def gf_bernoulli_higher(l: int, order: int) -> Series:
    """(t/(e^t - 1))^l."""
    if l < 1:
        raise DomainError("order l must be a positive integer")
    return _bernoulli_series(l, order)


@lru_cache(maxsize=None)
def gf_apostol_bernoulli(l: int, lam: Rat, order: int) -> Series:
    """(t/(lam e^t - 1))^l for lam != 1."""
    lam = Fraction(lam)
    if lam == 1:
        raise DomainError("lambda=1 not in domain; use bernoulli-higher")
    if l < 1:
        raise DomainError("order l must be a positive integer")
    core = Series.t(order) * (Series.exp_t(1, order) * lam - 1).inverse()
    return core**l


@lru_cache(maxsize=None)
def gf_apostol_euler(alpha: int, lam: Rat, order: int) -> Series:
    """(2/(lam e^t + 1))^alpha for integer alpha >= 1."""
    lam = Fraction(lam)
    if lam == -1:
        raise DomainError("lambda=-1 is a pole of the Euler-type families")
    if not (isinstance(alpha, int) and alpha >= 1):
        raise DomainError("plain series route needs integer alpha >= 1")
    return ((Series.exp_t(1, order) * lam + 1).inverse() * 2) ** alpha


@lru_cache(maxsize=None)
def gf_apostol_euler_mantissa(alpha: Rat, lam: Rat, order: int) -> Series:
    """((lam+1)/(lam e^t + 1))^alpha: the series whose EGF coefficients are
    the Euler mantissas, valid for any rational alpha."""
    lam = Fraction(lam)
    if lam == -1:
        raise DomainError("lambda=-1 is a pole of the Euler-type families")
    unit = (Series.exp_t(1, order) * lam + 1).inverse() * (lam + 1)
    return binomial_power(unit, Fraction(alpha))


@lru_cache(maxsize=None)
def gf_bernoulli_second_kind(order: int) -> Series:
    """t/log(1+t), via the unit series log(1+t)/t."""
    log_over_t = Series([Fraction((-1) ** k, k + 1) for k in range(order + 1)], order)
    return log_over_t.inverse()


# ---------------------------------------------------------------------------
# family registry for the CLI
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    id: str
    kind: str  # "number" | "poly" | "scaled" | "triangle"
    needs: tuple[str, ...]  # subset of ("alpha", "l", "lambda")
    describe: str


FAMILIES: dict[str, FamilySpec] = {
    f.id: f
    for f in [
        FamilySpec("exponential-poly", "poly", (), "Bell/Touchard polynomials"),
        FamilySpec("bell", "number", (), "Bell numbers"),
        FamilySpec("complementary-bell", "number", (), "alternating-sign Bell numbers"),
        FamilySpec("geometric-poly", "poly", (), "geometric (Fubini) polynomials"),
        FamilySpec("fubini", "number", (), "ordered Bell numbers"),
        FamilySpec("general-geometric", "poly", ("alpha",), "geometric polynomials of rational order"),
        FamilySpec("euler-classical", "number", (), "Euler polynomial values at 0"),
        FamilySpec("euler-higher", "number", ("alpha",), "higher-order Euler numbers"),
        FamilySpec("apostol-euler", "scaled", ("lambda",), "Apostol-Euler numbers"),
        FamilySpec("apostol-euler-higher", "scaled", ("alpha", "lambda"), "higher-order Apostol-Euler numbers"),
        FamilySpec("bernoulli-classical", "number", (), "Bernoulli numbers"),
        FamilySpec("bernoulli-higher", "number", ("l",), "higher-order Bernoulli numbers"),
        FamilySpec("apostol-bernoulli", "number", ("lambda",), "Apostol-Bernoulli numbers"),
        FamilySpec("apostol-bernoulli-higher", "number", ("l", "lambda"), "higher-order Apostol-Bernoulli numbers"),
        FamilySpec("bernoulli-second-kind", "number", (), "Bernoulli numbers of the second kind"),
        FamilySpec("stirling2", "triangle", (), "Stirling set-partition triangle"),
        FamilySpec("stirling1-unsigned", "triangle", (), "unsigned Stirling cycle triangle"),
    ]
}


def family_value(fid: str, n: int, *, alpha: Rat | None = None, l: int | None = None, lam: Rat | None = None):
    """Value of family `fid` at index n; Poly, Fraction, ScaledRational, or
    tuple of ints for triangle rows."""
    spec = FAMILIES.get(fid)
    if spec is None:
        raise DomainError(f"unknown family id: {fid.strip() or '(empty)'}")
    missing = [p for p in spec.needs if {"alpha": alpha, "l": l, "lambda": lam}[p] is None]
    if missing:
        raise DomainError(f"family {fid} needs --{' --'.join(missing)}")
    if fid == "exponential-poly":
        return exponential_poly(n)
    if fid == "bell":
        return bell(n)
    if fid == "complementary-bell":
        return complementary_bell(n)
    if fid == "geometric-poly":
        return geometric_poly(n)
    if fid == "fubini":
        return fubini(n)
    if fid == "general-geometric":
        return general_geometric(n, Fraction(alpha))
    if fid == "euler-classical":
        return euler_classical(n)
    if fid == "euler-higher":
        return euler_higher(n, Fraction(alpha))
    if fid == "apostol-euler":
        return apostol_euler_higher(n, Fraction(1), Fraction(lam))
    if fid == "apostol-euler-higher":
        return apostol_euler_higher(n, Fraction(alpha), Fraction(lam))
    if fid == "bernoulli-classical":
        return bernoulli_classical(n)
    if fid == "bernoulli-higher":
        return bernoulli_higher(n, int(l))
    if fid == "apostol-bernoulli":
        return apostol_bernoulli_higher(n, 1, Fraction(lam))
    if fid == "apostol-bernoulli-higher":
        return apostol_bernoulli_higher(n, int(l), Fraction(lam))
    if fid == "bernoulli-second-kind":
        return bernoulli_second_kind(n)
    if fid == "stirling2":
        from .stirling import _SECOND

        return _SECOND.row(n)
    if fid == "stirling1-unsigned":
        from .stirling import _FIRST

        return _FIRST.row(n)
    raise AssertionError(f"unhandled family {fid}")
