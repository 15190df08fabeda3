"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every check is exact (no tolerances anywhere), and the stated wall-time
budgets are asserted.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction as F
from math import factorial

from polyfam import families as fam
from polyfam.identities import REGISTRY, GridConfig, run_all, run_identity
from polyfam.rationals import binomial
from polyfam.stirling import stirling1_unsigned, stirling2

from .oracles import (
    bell_by_enumeration,
    fubini_by_enumeration,
    stirling1_row_by_enumeration,
    stirling2_row_by_enumeration,
)

LAMBDA_GRID = (F(2), F(1, 3), F(-3), F(5))
X_GRID = (F(1), F(-1, 2), F(2, 3))


class _Budget:
    def __init__(self, criterion: str, seconds: float):
        self.criterion = criterion
        self.seconds = seconds

    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.started
        status = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.criterion}: {status} ({elapsed:.2f}s)")
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.criterion} exceeded its {self.seconds}s budget: {elapsed:.2f}s"
            )
        return False


def test_criterion_01_enumeration_oracles():
    with _Budget("1 enumeration oracles", 5.0):
        for n in range(11):
            assert fam.bell(n) == bell_by_enumeration(n)
        for n in range(9):
            assert fam.fubini(n) == fubini_by_enumeration(n)
        for n in range(10):
            assert [stirling2(n, k) for k in range(n + 1)] == stirling2_row_by_enumeration(n)
            assert [stirling1_unsigned(n, k) for k in range(n + 1)] == stirling1_row_by_enumeration(n)


def test_criterion_02_dual_route_families():
    with _Budget("2 dual-route families", 10.0):
        order = 14
        for x in X_GRID:
            bell_series = fam.gf_exp_bell(x, order)
            for n in range(order + 1):
                assert bell_series.egf_coeff(n) == fam.exponential_poly(n)(x)
        for n in range(order + 1):
            assert fam.exponential_poly(n) == fam.exponential_poly_recurrence(n)
        for alpha in (1, 2, 3, 4):
            for x in X_GRID:
                w_series = fam.gf_general_geometric(x, F(alpha), order)
                for n in range(order + 1):
                    assert w_series.egf_coeff(n) == fam.general_geometric(n, F(alpha))(x)
        for alpha in (1, 2, 3, 4):
            for lam in LAMBDA_GRID:
                e_series = fam.gf_apostol_euler(alpha, lam, order)
                base = fam.euler_prefactor_base(lam)
                for n in range(order + 1):
                    assert e_series.egf_coeff(n) == base**alpha * fam.apostol_euler_mantissa(n, F(alpha), lam)
        for l in (1, 2, 3, 4):
            for lam in LAMBDA_GRID:
                b_series = fam.gf_apostol_bernoulli(l, lam, order)
                for n in range(order + 1):
                    assert b_series.egf_coeff(n) == fam.apostol_bernoulli_higher(n, l, lam)


def test_criterion_03_index_shift_convolution():
    with _Budget("3 symbolic index-shift convolution", 5.0):
        grid = GridConfig(nmax=12, mmax=12, nm_sum=12)
        reports = run_identity("spivey", grid)
        assert len(reports) == sum(1 for n in range(13) for m in range(13) if n + m <= 12)
        assert all(r.status == "pass" for r in reports)
        # Bell-number form at x = 1
        for n in range(7):
            for m in range(7):
                rhs = sum(
                    binomial(n, k) * stirling2(m, j) * F(j) ** (n - k) * fam.bell(k)
                    for k in range(n + 1)
                    for j in range(m + 1)
                )
                assert fam.bell(n + m) == rhs


def test_criterion_04_generating_function_shifts():
    with _Budget("4 generating-function shifts", 10.0):
        grid = GridConfig()  # order 12, m <= 4, fractional orders included
        for identity_id in ("gf-phi-shift", "gf-w-shift", "gf-apostol-euler-shift",
                            "gf-apostol-bernoulli-shift", "gf-phi-base", "gf-w-base"):
            reports = run_identity(identity_id, grid)
            assert reports, identity_id
            assert all(r.status in ("pass", "skipped-domain") for r in reports), identity_id
            assert any(r.status == "pass" for r in reports)
        # prefactor-normalized checks at non-integer order actually ran
        euler_frac = [
            r for r in run_identity("gf-apostol-euler-shift", grid)
            if r.params["alpha"] in ("1/2", "5/2")
        ]
        assert euler_frac and all(r.status == "pass" for r in euler_frac)
        w_frac = [
            r for r in run_identity("gf-w-shift", grid)
            if r.params["alpha"] in ("1/2", "5/2")
        ]
        assert w_frac and all(r.status == "pass" for r in w_frac)


def test_criterion_05_recurrence_suite():
    with _Budget("5 recurrence suite", 30.0):
        ids = [
            "w-general-recurrence",
            "apostol-euler-recurrence",
            "apostol-bernoulli-recurrence",
            "bernoulli-higher-recurrence",
            "apostol-bernoulli-diag-recurrence",
            "poly-shift-prop",
            "poly-shift-theorem",
            "aux-wang",
            "aux-srivastava-luo",
            "aux-euler-reflection",
            "w-explicit",
            "fubini-explicit",
        ]
        summary, reports, _ = run_all(GridConfig(), ids)
        assert summary.failed == 0
        assert summary.passed > 0
        # classical (lambda=1) and first-order specializations are on the grid
        covered = {(r.id, r.params.get("lambda"), r.params.get("alpha"), r.params.get("l"))
                   for r in reports if r.status == "pass"}
        assert any(k[0] == "apostol-euler-recurrence" and k[1] == "1" for k in covered)
        assert any(k[0] == "apostol-bernoulli-recurrence" and k[1] == "1" for k in covered)
        assert any(k[0] == "poly-shift-theorem" and k[1] == "1" and k[3] == "1" for k in covered)


def test_criterion_06_finite_sums_and_diagonal_values():
    with _Budget("6 finite sums and diagonal values", 5.0):
        summary, _, _ = run_all(GridConfig(), ["finite-sums", "diag-bernoulli-values"])
        assert summary.failed == 0 and summary.passed > 0
        for n in range(1, 13):
            c_n = fam.bernoulli_second_kind(n)
            assert fam.bernoulli_higher_poly(n, n, 1) == factorial(n) * c_n
            # equivalent restatement of the second-kind link in diagonal form
            assert c_n == fam.bernoulli_higher_poly(n, n, 1) / factorial(n)
            if n >= 2:
                assert fam.bernoulli_higher_poly(n, n, 1) == fam.bernoulli_higher(n, n - 1) / (1 - n)


def test_criterion_07_connection_formulas():
    with _Budget("7 connection formulas", 5.0):
        summary, _, _ = run_all(GridConfig(), ["w-connections", "apostol-bernoulli-classical"])
        assert summary.failed == 0 and summary.passed > 0
        for n in range(11):
            assert fam.geometric_poly(n)(F(-1, 2)) == fam.euler_classical(n)
        for lam in LAMBDA_GRID:
            for n in range(1, 13):
                assert fam.apostol_bernoulli_higher(n, 1, lam) == \
                    F(n) / (lam - 1) * fam.geometric_poly(n - 1)(lam / (1 - lam))
        for alpha in (F(1), F(2), F(1, 2), F(5, 2)):
            for lam in LAMBDA_GRID:
                for n in range(11):
                    assert fam.general_geometric(n, alpha)(-lam / (lam + 1)) == \
                        fam.apostol_euler_mantissa(n, alpha, lam)
        for l in (1, 2, 3, 4):
            for lam in LAMBDA_GRID:
                for n in range(11):
                    assert fam.general_geometric(n, l)(-lam / (lam - 1)) == \
                        (lam - 1) ** l / factorial(l) / binomial(n + l, l) * \
                        fam.apostol_bernoulli_higher(n + l, l, lam)


def test_criterion_08_negative_control():
    with _Budget("8 negative control", 10.0):
        grid = GridConfig(
            nmax=2, mmax=2, nm_sum=4, gf_mmax=1, ls=(1, 2), int_alphas=(1, 2),
            frac_alphas=(F(1, 2),), lambdas=(F(2),), xs=(F(1),), order=6,
        )
        summary, reports, _ = run_all(grid, perturb=True)
        checked = [r for r in reports if r.status != "skipped-domain"]
        assert checked and summary.passed == 0
        per_id = {r.id for r in checked if r.status == "fail"}
        assert per_id == set(REGISTRY)


def _run_cli(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "polyfam", *argv], capture_output=True, text=True
    )


VERIFY_ALL_SECONDS = None


def test_criterion_09_determinism_and_exit_codes():
    global VERIFY_ALL_SECONDS
    with _Budget("9 determinism and exit codes", 180.0):
        started = time.perf_counter()
        one = _run_cli("verify", "--all", "--format", "json", "--jobs", "1")
        VERIFY_ALL_SECONDS = time.perf_counter() - started
        four = _run_cli("verify", "--all", "--format", "json", "--jobs", "4")
        assert one.returncode == 0 and four.returncode == 0
        assert one.stdout == four.stdout
        payload = json.loads(one.stdout)
        assert payload["summary"]["fail"] == 0
        # parsing and re-serializing reproduces the bytes
        assert json.dumps(payload, indent=2) + "\n" == one.stdout
        # exit-code contract: pass -> 0, fail -> 1, usage -> 2
        ok = _run_cli("verify", "--id", "spivey", "--nmax", "2", "--mmax", "2")
        assert ok.returncode == 0
        bad = _run_cli("verify", "--id", "spivey", "--nmax", "2", "--mmax", "2", "--perturb")
        assert bad.returncode == 1
        usage = _run_cli("verify", "--id", "no-such-id")
        assert usage.returncode == 2
        domain = _run_cli("table", "--family", "apostol-bernoulli-higher",
                          "--l", "2", "--lambda", "1", "--n", "4")
        assert domain.returncode == 2


def test_criterion_10_full_run_under_a_minute():
    with _Budget("10 full verification runtime", 60.0):
        seconds = VERIFY_ALL_SECONDS
        if seconds is None:
            started = time.perf_counter()
            proc = _run_cli("verify", "--all", "--format", "json", "--jobs", "1")
            seconds = time.perf_counter() - started
            assert proc.returncode == 0
        assert seconds < 60.0, f"full verification took {seconds:.1f}s"
