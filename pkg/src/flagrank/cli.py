"""Command-line front end: ``flagrank <command> ...``.

Reports go to stdout as JSON, diagnostics to stderr.  Exit codes: 0 success,
1 verification failed, 2 invalid input, 3 scan budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from flagrank import bounds, constructions, serialize
from flagrank.errors import BudgetExceeded, InvalidInput
from flagrank.flagcodes import UTCode, code_report, dual_code, flag_rank_distance, singleton_values
from flagrank.flagspace import phi_a_inverse, sum_subspace_distance
from flagrank.gf import gf
from flagrank.linalg import Mat

OK, FAILED, INVALID, BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: dict | None
    diagnostics: str = ""


def _read_code(path: str) -> UTCode:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    obj = serialize.loads(text)
    if not isinstance(obj, UTCode):
        raise InvalidInput(f"expected a utcode document, got {serialize.to_json(obj)['kind']}")
    return obj


def cmd_construct(args: argparse.Namespace) -> CommandResult:
    F = gf(args.q)
    kind = args.kind
    if kind == "A":
        k, eps = args.k, args.eps
        if k is None or eps is None:
            if args.n is None:
                raise InvalidInput("construction A needs --n or both --k and --eps")
            k, eps = (args.n + 1) // 2, 1 - args.n % 2
        if args.n is not None and args.n != 2 * k - 1 + eps:
            raise InvalidInput(f"--n {args.n} does not match 2k-1+eps = {2 * k - 1 + eps}")
        C = constructions.construction_A(F, k, eps)
    elif kind == "B":
        k = args.k
        if k is None:
            if args.n is None or args.n % 2 == 0:
                raise InvalidInput("construction B needs --k or an odd --n")
            k = (args.n + 1) // 2
        if args.n is not None and args.n != 2 * k - 1:
            raise InvalidInput(f"--n {args.n} does not match 2k-1 = {2 * k - 1}")
        C = constructions.construction_B(F, k)
    else:
        if args.n is None:
            raise InvalidInput(f"construction {kind} needs --n")
        build = {
            "delta2": constructions.construction_delta2,
            "delta3": constructions.construction_delta3,
            "C": constructions.construction_C,
        }[kind]
        C = build(F, args.n)
    return CommandResult(OK, serialize.to_json(C))


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    C = _read_code(args.file)
    if args.certify is not None and args.exact:
        raise InvalidInput("--certify and --exact are mutually exclusive")
    rep = code_report(C, delta_hint=args.certify, exact=args.exact)
    if args.certify is not None:
        ok = rep.delta is not None and rep.delta >= args.certify
    else:
        ok = rep.is_mfrd
    return CommandResult(OK if ok else FAILED, rep.to_json())


def cmd_bounds(args: argparse.Namespace) -> CommandResult:
    F = gf(args.q)
    wm, gd, fd = singleton_values(args.n, args.delta)
    out: dict = {"n": args.n, "delta": args.delta, "q": F.order, "w_max": wm, "g": gd, "f": fd}
    out["slj"] = bounds.slj_decomposition(args.n, args.delta).to_json()
    out["corollary"] = bounds.corollary_info(F, args.delta).to_json() if gd >= 2 else None
    out["existence"] = (
        bounds.existence_limits(F, args.delta, args.n).to_json() if args.delta in (3, 4) else None
    )
    return CommandResult(OK, out)


def cmd_example(args: argparse.Namespace) -> CommandResult:
    C = constructions.named_example(args.id, gf(args.q))
    rep = code_report(C)
    return CommandResult(OK if rep.is_mfrd else FAILED, rep.to_json())


def cmd_search(args: argparse.Namespace) -> CommandResult:
    F = gf(args.q)
    res = constructions.random_mfrd_search(F, args.n, args.delta, args.trials, args.seed)
    out = {
        "found": res.code is not None,
        "trial": res.trial,
        "trials_run": res.trials_run,
        "rank_deficient": res.rank_deficient,
        "code": serialize.to_json(res.code) if res.code is not None else None,
        "report": code_report(res.code, delta_hint=args.delta).to_json() if res.code is not None else None,
    }
    return CommandResult(OK if res.code is not None else FAILED, out)


def cmd_isometry(args: argparse.Namespace) -> CommandResult:
    F = gf(args.q)
    n, q = args.n, F.order
    if n < 1 or args.samples < 0:
        raise InvalidInput("need n >= 1 and samples >= 0")
    rng = np.random.default_rng(args.seed)
    agree = 0
    mismatches = []
    for s in range(args.samples):
        X, Y = (Mat(F, np.triu(rng.integers(0, q, size=(n, n)))) for _ in range(2))
        dss = sum_subspace_distance(phi_a_inverse(X), phi_a_inverse(Y))
        dfr = flag_rank_distance(X, Y)
        if dss == 2 * dfr:
            agree += 1
        else:
            mismatches.append({"sample": s, "d_ss": dss, "d_fr": dfr})
    out = {"n": n, "q": q, "samples": args.samples, "seed": args.seed, "agree": agree, "mismatches": mismatches}
    return CommandResult(OK if not mismatches else FAILED, out)


def cmd_dual(args: argparse.Namespace) -> CommandResult:
    return CommandResult(OK, serialize.to_json(dual_code(_read_code(args.file))))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagrank", description="Flag-rank-metric code toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an MFRD code and print it as JSON")
    c.add_argument("kind", choices=["A", "B", "delta2", "delta3", "C"])
    c.add_argument("--q", type=int, required=True, help="field order")
    c.add_argument("--n", type=int, help="matrix size")
    c.add_argument("--k", type=int, help="half size for constructions A and B")
    c.add_argument("--eps", type=int, choices=[0, 1], help="parity offset for construction A")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="report the parameters of a code file")
    v.add_argument("file", help="utcode JSON file, or - for stdin")
    v.add_argument("--certify", type=int, metavar="DELTA", help="certify minimum distance >= DELTA")
    v.add_argument("--exact", action="store_true", help="force an exhaustive scan")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="bound values for (n, delta, q)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--delta", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("example", help="verify a built-in example code")
    e.add_argument("id", choices=sorted(constructions.EXAMPLE_GENERATORS))
    e.add_argument("--q", type=int, required=True)
    e.set_defaults(func=cmd_example)

    s = sub.add_parser("search", help="randomized search for an MFRD code")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=int, required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    i = sub.add_parser("isometry-demo", help="compare subspace and flag-rank distances on random flags")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--q", type=int, required=True)
    i.add_argument("--samples", type=int, default=100)
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_isometry)

    d = sub.add_parser("dual", help="print the dual code")
    d.add_argument("file", help="utcode JSON file, or - for stdin")
    d.set_defaults(func=cmd_dual)
    return p


def run(argv: Sequence[str] | None = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(INVALID if exc.code else OK, None, "")
    try:
        return args.func(args)
    except InvalidInput as exc:
        return CommandResult(INVALID, None, f"error: {exc}")
    except BudgetExceeded as exc:
        return CommandResult(BUDGET, None, f"budget exceeded: {exc}")


def main(argv: Sequence[str] | None = None) -> int:
    res = run(argv)
    if res.report is not None:
        print(json.dumps(res.report, indent=2))
    if res.diagnostics:
        print(res.diagnostics, file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
