"""Command-line front end.

Exit codes: 0 success (including runs whose only discrepancies are known
errata), 1 verification failure, 2 invalid parameters, 3 workload guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .asymptotics import (
    coro_ag_delta,
    cormu2_M,
    cormu_bound,
    curves_csv,
    parse_grid,
    sample_curves,
)
from .bounds import (
    ghw_abundant,
    ghw_basic,
    highest_rghw,
    propemme_bound,
    propmu_closed,
    singleton_upper,
)
from .errors import InvalidParameter, InvariantViolation, WorkloadExceeded
from .ramp import scheme_report
from .rghw import CodePairSpec, rghw_lower_exact, z_exact
from .semigroup import TowerParams, build_explicit, build_recursive, member_set_upto
from .verify import VerifyConfig, run_verification

EXIT_OK, EXIT_VERIFY, EXIT_PARAMS, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(InvalidParameter):
    pass


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"{args.which or args.command} needs {flags}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _z_kwargs(args: argparse.Namespace) -> dict:
    return {"budget": args.budget, "force": args.force, "threads": args.threads}


def _table(args: argparse.Namespace):
    _need(args, "ell", "nu")
    return build_recursive(TowerParams(args.ell, args.nu))


# -- subcommands -------------------------------------------------------------


def cmd_semigroup(args: argparse.Namespace) -> int:
    params = TowerParams(args.ell, args.nu)
    if args.method == "recursive":
        doc = build_recursive(params).to_dict()
    elif args.method == "explicit":
        doc = build_explicit(params).to_table().to_dict()
    else:
        rec = build_recursive(params)
        exp = build_explicit(params).to_table()
        c = max(rec.conductor, exp.conductor)
        diff = sorted(member_set_upto(rec, c) ^ member_set_upto(exp, c))
        doc = {
            "table": rec.to_dict(),
            "equal": not diff,
            "difference": diff,
            "diagnostics": rec.diagnostics(),
        }
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    which = args.which
    if which == "propmu":
        _need(args, "ell", "nu", "mu")
        params = TowerParams(args.ell, args.nu)
        doc = propmu_closed(params, args.mu, table=build_recursive(params), sign=args.sign).to_dict()
    elif which == "teomu":
        _need(args, "n", "mu1", "mu2", "m")
        table = _table(args)
        pair = CodePairSpec.from_table(args.n, args.mu1, args.mu2, table)
        doc = rghw_lower_exact(pair, table, args.m, **_z_kwargs(args)).to_dict()
    elif which == "propemme":
        _need(args, "n", "mu1", "mu2", "m")
        table = _table(args)
        pair = CodePairSpec.from_table(args.n, args.mu1, args.mu2, table)
        bv = propemme_bound(pair, table.params, args.m)
        doc = bv.to_dict()
        z = z_exact(table, pair.mu_diff, args.m, **_z_kwargs(args))
        doc["oracle_value"] = pair.n - pair.mu1 + z.value
        doc["delta"] = doc["oracle_value"] - doc["value"]
    elif which == "propAG":
        _need(args, "n", "mu1", "m")
        doc = ghw_abundant(args.n, args.mu1, _table(args), args.m, args.mu2).to_dict()
    elif which == "propAGnew":
        _need(args, "n", "k", "m")
        doc = ghw_basic(args.n, args.k, _table(args), args.m).to_dict()
    elif which == "singleton":
        _need(args, "n", "m")
        k = args.k
        if k is None:
            _need(args, "mu1")
            k = _table(args).dimension(args.mu1, args.n)
        doc = singleton_upper(args.n, k, args.m).to_dict()
    else:
        _need(args, "n", "mu1", "mu2")
        table = _table(args)
        pair = CodePairSpec.from_table(args.n, args.mu1, args.mu2, table)
        lower, upper = highest_rghw(pair, table, **_z_kwargs(args))
        doc = {"ell_cd": pair.ell_cd, "lower": lower.to_dict(), "upper": upper.to_dict()}
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_asym(args: argparse.Namespace) -> int:
    which = args.which
    if which == "curves":
        _need(args, "q", "rtilde", "grid")
        r = args.r if args.r is not None else args.rtilde
        rows = sample_curves(
            args.q,
            parse_grid(args.grid),
            R=r,
            R_tilde=args.rtilde,
            R_tilde2=args.rtilde2,
            beta_uses=args.beta_uses,
        )
        if all(
            row.delta_coro_ag_eq1 is None and row.delta_cormu is None for row in rows
        ):
            raise InvalidParameter(f"every grid point is outside both domains: {rows[0].branch}")
        _emit(curves_csv(rows), args.out)
        return EXIT_OK
    if which == "cormu":
        _need(args, "q", "rho", "rtilde")
        doc = cormu_bound(
            args.q, args.rho, args.rtilde, args.rtilde2, beta_uses=args.beta_uses, R=args.r
        ).to_dict()
    elif which == "coroag":
        _need(args, "q", "rho", "rtilde", "r")
        d = coro_ag_delta(args.q, args.r, args.rtilde, args.rho)
        doc = {"delta_coro_ag_eq1": d.delta1, "delta_coro_ag_eq2": d.delta2}
    else:
        _need(args, "q", "r1", "r2")
        doc = cormu2_M(
            args.q, args.r1, args.r2, hypotheses_asserted=not args.no_assert_hypotheses
        ).to_dict()
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = VerifyConfig(
        max_ell=args.max_ell,
        max_nu=args.max_nu,
        max_mu=args.max_mu,
        budget=args.budget,
        inject_fault=args.inject_fault,
    )
    result = run_verification(cfg)
    _emit(result.jsonl(), args.out)
    known = len(result.records) - len(result.failures)
    print(
        f"verify: {len(result.records)} ledger records, {known} known errata, "
        f"{len(result.failures)} failures",
        file=sys.stderr,
    )
    return result.exit_code


def cmd_ramp(args: argparse.Namespace) -> int:
    _need(args, "n")
    table = None
    if args.primal is not None:
        primal: Any = _int_list(args.primal)
    else:
        _need(args, "mu1", "mu2")
        table = _table(args)
        primal = CodePairSpec.from_table(args.n, args.mu1, args.mu2, table)
    dual: Any = None
    if args.dual is not None:
        dual = _int_list(args.dual)
    elif args.dual_mu1 is not None or args.dual_mu2 is not None:
        _need(args, "dual_mu1", "dual_mu2")
        table = table or _table(args)
        dual = CodePairSpec.from_table(args.n, args.dual_mu1, args.dual_mu2, table)
    report = scheme_report(args.n, primal, dual, table, **_z_kwargs(args))
    _emit(dump_json(report.to_dict()), args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsrghw",
        description="Semigroups of the Garcia-Stichtenoth tower and RGHW bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, engine: bool = False) -> None:
        p.add_argument("--out", help="write the result here instead of stdout")
        if engine:
            p.add_argument("--budget", type=_positive, help="step budget for exact minimisation")
            p.add_argument("--force", action="store_true", help="ignore the step budget")
            p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("semigroup", help="build H(Q_nu)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--method", choices=["recursive", "explicit", "both"], default="recursive")
    common(p)
    p.set_defaults(func=cmd_semigroup, which=None)

    p = sub.add_parser("bound", help="evaluate one bound")
    p.add_argument(
        "--which",
        required=True,
        choices=["teomu", "propemme", "propAG", "propAGnew", "propmu", "singleton", "highest"],
    )
    for name in ("ell", "nu", "n", "mu", "mu1", "mu2", "m", "k"):
        p.add_argument("--" + name, type=int)
    p.add_argument("--sign", choices=["-", "+"], default="-")
    common(p, engine=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("asym", help="asymptotic bounds and curves")
    p.add_argument("--which", required=True, choices=["curves", "cormu", "coroag", "cormu2"])
    p.add_argument("--q", type=int)
    p.add_argument("--rtilde", type=float)
    p.add_argument("--rtilde2", type=float, default=0.0)
    p.add_argument("--r", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--grid", help="start:step:stop or a comma-separated list")
    p.add_argument("--beta-uses", choices=["R_tilde", "R"], default="R_tilde")
    p.add_argument("--no-assert-hypotheses", action="store_true")
    common(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("verify", help="run the oracle suites and print the ledger")
    p.add_argument("--max-ell", type=int, default=3)
    p.add_argument("--max-nu", type=int, default=6)
    p.add_argument("--max-mu", type=int, default=12)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--inject-fault", action="store_true", help="corrupt one table (self-test)")
    common(p)
    p.set_defaults(func=cmd_verify, which=None)

    p = sub.add_parser("ramp", help="ramp secret-sharing thresholds")
    for name in ("ell", "nu", "n", "mu1", "mu2", "dual-mu1", "dual-mu2"):
        p.add_argument("--" + name, type=int)
    p.add_argument("--primal", help="comma-separated lower bounds on M_1..M_l(C1,C2)")
    p.add_argument("--dual", help="comma-separated lower bounds on M_1..M_l of the dual pair")
    common(p, engine=True)
    p.set_defaults(func=cmd_ramp, which=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkloadExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({"estimate": exc.estimate, "budget": exc.budget}, sort_keys=True), file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"error: {exc} (index {exc.index})", file=sys.stderr)
        return EXIT_VERIFY
    except (InvalidParameter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
