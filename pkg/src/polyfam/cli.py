"""Command-line front end: family tables, identity verification, series.

Exit codes: 0 all checks pass (or table/series emitted), 1 at least one
identity failed, 2 usage or domain error.  All numeric I/O is exact rational
strings; nothing here ever touches floating point.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from fractions import Fraction

from . import families as fam
from .identities import REGISTRY, GridConfig, UnknownIdentityError, run_all
from .poly import Poly
from .rationals import DomainError, parse_rational, rational_str
from .series import Series


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyfam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--config", help="flat key=value file mirroring the flags")

    t = sub.add_parser("table", help="emit n -> value rows for a family")
    common(t)
    t.add_argument("--family", required=True)
    t.add_argument("--n", type=int, default=8, help="largest index to emit")
    t.add_argument("--alpha", type=str, default=None)
    t.add_argument("--l", type=int, default=None)
    t.add_argument("--lambda", dest="lam", type=str, default=None)

    v = sub.add_parser("verify", help="run identity checks over a grid")
    common(v)
    v.add_argument("--all", action="store_true", help="run every registered identity")
    v.add_argument("--id", action="append", default=None, help="identity id (repeatable)")
    v.add_argument("--list", action="store_true", help="list identity ids and exit")
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--mmax", type=int, default=None)
    v.add_argument("--nm-sum", type=int, default=None)
    v.add_argument("--gf-mmax", type=int, default=None)
    v.add_argument("--l", type=str, default=None, help="comma-separated orders")
    v.add_argument("--alpha", type=str, default=None, help="comma-separated rational orders")
    v.add_argument("--lambda", dest="lam", type=str, default=None, help="comma-separated rationals")
    v.add_argument("--x", type=str, default=None, help="comma-separated rational sample points")
    v.add_argument("--order", type=int, default=None, help="series truncation order")
    v.add_argument("--perturb", action="store_true",
                   help="negative control: inject an off-by-one error into every check")
    v.add_argument("--lambda-certify", action="store_true",
                   help="replace the lambda grid with enough points to certify rational-function identities")
    v.add_argument("--timing", action="store_true", help="record per-point wall time (non-deterministic output)")

    s = sub.add_parser("series", help="print a generating series")
    common(s)
    s.add_argument("--gf", required=True,
                   help="one of: exp-bell, geometric, general-geometric, apostol-euler, "
                        "apostol-bernoulli, bernoulli-higher, bernoulli-second-kind")
    s.add_argument("--x", type=str, default=None)
    s.add_argument("--alpha", type=str, default=None)
    s.add_argument("--l", type=int, default=None)
    s.add_argument("--lambda", dest="lam", type=str, default=None)
    s.add_argument("--order", type=int, default=8)
    return parser


def _find_config_path(argv: list[str]) -> str | None:
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return None


def _apply_config(argv: list[str]) -> list[str]:
    """Prepend config-file values so explicit flags override them."""
    path = _find_config_path(argv)
    if path is None:
        return argv
    injected: list[str] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if value.lower() in ("true", "yes", "on"):
                injected.append(f"--{key}")
            else:
                injected.extend([f"--{key}", value])
    # insert after the subcommand so explicit flags win over config values
    return argv[:2] + injected + argv[2:]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _value_strings(value) -> tuple[str, object]:
    """(display string, json value) for one table cell."""
    if isinstance(value, Poly):
        return str(value), value.coeff_strings()
    if isinstance(value, tuple):  # triangle row
        return " ".join(str(v) for v in value), [str(v) for v in value]
    if isinstance(value, fam.ScaledRational):
        return str(value), str(value)
    return rational_str(value), rational_str(value)


def _emit_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    alpha = parse_rational(args.alpha) if args.alpha is not None else None
    lam = parse_rational(args.lam) if args.lam is not None else None
    try:
        values = [
            fam.family_value(args.family, n, alpha=alpha, l=args.l, lam=lam)
            for n in range(args.n + 1)
        ]
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = {
            "family": args.family,
            "params": _param_obj(alpha=alpha, l=args.l, lam=lam),
            "rows": [{"n": n, "value": _value_strings(v)[1]} for n, v in enumerate(values)],
        }
        sys.stdout.write(_json_dumps(payload))
    elif args.format == "csv":
        sys.stdout.write(_emit_csv([[str(n), _value_strings(v)[0]] for n, v in enumerate(values)]))
    else:
        for n, v in enumerate(values):
            sys.stdout.write(f"{n}\t{_value_strings(v)[0]}\n")
    return 0


def _param_obj(**kwargs) -> dict:
    out = {}
    for key, value in kwargs.items():
        if value is None:
            continue
        name = {"lam": "lambda"}.get(key, key)
        out[name] = rational_str(value) if isinstance(value, Fraction) else str(value)
    return out


def _grid_from_args(args) -> GridConfig:
    grid = GridConfig()
    updates = {}
    if args.nmax is not None:
        updates["nmax"] = args.nmax
    if args.mmax is not None:
        updates["mmax"] = args.mmax
    if args.nm_sum is not None:
        updates["nm_sum"] = args.nm_sum
    elif args.nmax is not None or args.mmax is not None:
        nmax = args.nmax if args.nmax is not None else grid.nmax
        mmax = args.mmax if args.mmax is not None else grid.mmax
        updates["nm_sum"] = nmax + mmax
    if args.gf_mmax is not None:
        updates["gf_mmax"] = args.gf_mmax
    if args.l is not None:
        updates["ls"] = tuple(_int_list(args.l))
    if args.alpha is not None:
        alphas = _rational_list(args.alpha)
        updates["int_alphas"] = tuple(int(a) for a in alphas if a.denominator == 1)
        updates["frac_alphas"] = tuple(a for a in alphas if a.denominator != 1)
    if args.lam is not None:
        updates["lambdas"] = tuple(_rational_list(args.lam))
    if args.x is not None:
        updates["xs"] = tuple(_rational_list(args.x))
    if args.order is not None:
        updates["order"] = args.order
    if args.lambda_certify:
        updates["certify"] = True
    return replace(grid, **updates)


def cmd_verify(args) -> int:
    if args.list:
        for identity_id in sorted(REGISTRY):
            sys.stdout.write(f"{identity_id}\t{REGISTRY[identity_id].description}\n")
        return 0
    if not args.all and not args.id:
        raise UsageError("choose identities with --all or --id")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    ids = None if args.all else args.id
    if ids is not None:
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise UsageError(f"unknown identity id: {', '.join(unknown)}")
    grid = _grid_from_args(args)
    try:
        summary, reports, bounds = run_all(
            grid, ids, perturb=args.perturb, timing=args.timing, jobs=args.jobs
        )
    except UnknownIdentityError as exc:  # defensive; ids were validated above
        raise UsageError(f"unknown identity id: {exc}") from None
    if args.format == "json":
        payload = {
            "summary": summary.to_dict(),
            "reports": [r.to_dict() for r in reports],
        }
        if bounds:
            payload["lambda_certification"] = {
                identity_id: {"degree_bound": bound, "lambda_points": 2 * bound + 2}
                for identity_id, bound in sorted(bounds.items())
            }
        sys.stdout.write(_json_dumps(payload))
    elif args.format == "csv":
        rows = [["id", "params", "status", "lhs", "rhs", "micros"]]
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            rows.append([r.id, params, r.status, r.lhs, r.rhs, str(r.micros)])
        sys.stdout.write(_emit_csv(rows))
        sys.stdout.write(f"# pass={summary.passed} fail={summary.failed} skipped={summary.skipped}\n")
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            line = f"{r.status:<14} {r.id} [{params}]"
            if r.status == "fail":
                line += f" lhs={r.lhs} rhs={r.rhs}"
            if r.status == "skipped-domain":
                line += f" ({r.reason})"
            sys.stdout.write(line + "\n")
        for identity_id, bound in sorted(bounds.items()):
            sys.stdout.write(f"certified-degree {identity_id}: D={bound} at {2 * bound + 2} lambda points\n")
        sys.stdout.write(f"pass={summary.passed} fail={summary.failed} skipped={summary.skipped}\n")
    return 1 if summary.failed else 0


_GF_IDS = (
    "exp-bell", "geometric", "general-geometric", "apostol-euler",
    "apostol-bernoulli", "bernoulli-higher", "bernoulli-second-kind",
)


def _build_series(args) -> tuple[Series, dict, str | None]:
    order = args.order
    if order < 0:
        raise UsageError("--order must be >= 0")
    x = parse_rational(args.x) if args.x is not None else None
    alpha = parse_rational(args.alpha) if args.alpha is not None else None
    lam = parse_rational(args.lam) if args.lam is not None else None
    gf = args.gf
    prefactor = None
    try:
        if gf == "exp-bell":
            if x is None:
                raise UsageError("exp-bell needs --x")
            series = fam.gf_exp_bell(x, order)
        elif gf == "geometric":
            if x is None:
                raise UsageError("geometric needs --x")
            series = fam.gf_geometric(x, order)
        elif gf == "general-geometric":
            if x is None or alpha is None:
                raise UsageError("general-geometric needs --x and --alpha")
            series = fam.gf_general_geometric(x, alpha, order)
        elif gf == "apostol-euler":
            if alpha is None or lam is None:
                raise UsageError("apostol-euler needs --alpha and --lambda")
            if alpha.denominator == 1:
                series = fam.gf_apostol_euler(int(alpha), lam, order)
            else:
                series = fam.gf_apostol_euler_mantissa(alpha, lam, order)
                prefactor = str(fam.scaled(1, fam.euler_prefactor_base(lam), alpha))
        elif gf == "apostol-bernoulli":
            if args.l is None or lam is None:
                raise UsageError("apostol-bernoulli needs --l and --lambda")
            series = fam.gf_apostol_bernoulli(args.l, lam, order)
        elif gf == "bernoulli-higher":
            if args.l is None:
                raise UsageError("bernoulli-higher needs --l")
            series = fam.gf_bernoulli_higher(args.l, order)
        elif gf == "bernoulli-second-kind":
            series = fam.gf_bernoulli_second_kind(order)
        else:
            raise UsageError(f"unknown generating series id {gf!r}; choose from {', '.join(_GF_IDS)}")
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return series, _param_obj(x=x, alpha=alpha, l=args.l, lam=lam), prefactor


def cmd_series(args) -> int:
    series, params, prefactor = _build_series(args)
    coeffs = series.coeff_strings()
    egf = [rational_str(series.egf_coeff(n)) for n in range(series.order + 1)]
    if args.format == "json":
        payload = {"gf": args.gf, "params": params, "order": series.order,
                   "coeffs": coeffs, "egf": egf}
        if prefactor:
            payload["prefactor"] = prefactor
        sys.stdout.write(_json_dumps(payload))
    elif args.format == "csv":
        rows = [["n", "coeff", "egf"]] + [[str(n), coeffs[n], egf[n]] for n in range(series.order + 1)]
        sys.stdout.write(_emit_csv(rows))
        if prefactor:
            sys.stdout.write(f"# prefactor={prefactor}\n")
    else:
        sys.stdout.write(f"series: {series}\n")
        if prefactor:
            sys.stdout.write(f"prefactor: {prefactor}\n")
        for n in range(series.order + 1):
            sys.stdout.write(f"{n}\t{coeffs[n]}\t{egf[n]}\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv if argv is None else ["polyfam"] + list(argv))
    try:
        argv = _apply_config(argv)
        try:
            args = build_parser().parse_args(argv[1:])
        except SystemExit as exc:  # argparse reports its own usage errors
            return int(exc.code or 0)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_series(args)
    except (UsageError, DomainError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
