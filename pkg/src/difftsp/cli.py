"""Command line: ``solve``, ``gen`` and ``exact``.

Exit codes: 0 success, 2 unreadable input or bad flags, 3 infeasible request
or size cap hit, 4 failed audit or broken internal invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .core import Instance
from .errors import (
    DiffTSPError,
    InfeasibleError,
    InternalInvariantError,
    MalformedInputError,
    PreconditionError,
    ResourceGuardError,
)
from .generate import random_instance
from .io import dump_native, read_instance
from .oracle import DEFAULT_CAP, DiffReport, exact_tour
from .tour_even import tour_even
from .tour_odd import tour_odd

SCHEMA = 1
EXIT_INPUT, EXIT_INFEASIBLE, EXIT_AUDIT = 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # keep argparse's exit code but our stderr style
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _parse_paths(text: str) -> list[tuple[int, ...]]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise PreconditionError(f"bad path {chunk!r}; expected comma-separated vertices") from None
    return out


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def solve_report(inst: Instance, args: argparse.Namespace) -> dict:
    """Run the parity-appropriate solver and assemble the JSON report."""
    start = time.perf_counter()
    n = inst.n
    report: dict = {"schema": SCHEMA, "instance": inst.name, "n": n, "scale": inst.scale, "seed": args.seed}
    if n % 2 == 0:
        res = tour_even(inst, audit=args.audit)
        report["algorithm"] = "even"
        report["factor_is_tour"] = res.factor_is_tour
        if args.audit:
            report["audit"] = res.audit.to_dict() if res.audit else {"status": "not applicable"}
    else:
        paths = _parse_paths(args.paths) if args.paths else None
        if args.mode == "fixed" and not paths and n >= 17:
            raise PreconditionError("--mode fixed needs --paths")
        res = tour_odd(inst, mode=args.mode, paths=paths, workers=args.threads, audit=args.audit)
        report["algorithm"] = "exact" if res.exact else "odd"
        report["mode"] = args.mode
        report["guesses"] = res.guesses
        if args.audit:
            report["audit"] = (
                {"status": "pass", "guesses_audited": res.audited}
                if res.audited
                else {"status": "not applicable"}
            )
    report["apx"] = res.length
    report["tour"] = list(res.tour)
    report["candidates"] = list(res.candidates)
    if args.oracle:
        opt = exact_tour(inst, "min", cap=args.cap)
        wor = exact_tour(inst, "max", cap=args.cap)
        dr = DiffReport.of(opt.length, wor.length, res.length)
        if n % 2 == 0:
            bound, ok = "4*apx <= 3*opt + wor", 4 * res.length <= 3 * dr.opt + dr.wor
        else:
            bound, ok = "8*apx <= 6*opt + 2*wor", 8 * res.length <= 6 * dr.opt + 2 * dr.wor
        report["oracle"] = dict(dr.to_dict(), guarantee=bound, verdict="PASS" if ok else "FAIL")
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    return report


def cmd_solve(args: argparse.Namespace) -> int:
    inst = read_instance(args.inp)
    _emit(solve_report(inst, args))
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    inst = random_instance(args.n, args.dist, args.seed, name=args.name or "")
    text = dump_native(inst)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    inst = read_instance(args.inp)
    res = exact_tour(inst, args.objective, cap=args.cap)
    _emit({"schema": SCHEMA, "instance": inst.name, "objective": args.objective, "length": res.length, "tour": list(res.tour)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="difftsp", description="Differential-approximation TSP solver with exact oracles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="approximate tour (even or odd n chosen automatically)")
    s.add_argument("--in", dest="inp", required=True, help="instance file (native JSON or TSPLIB)")
    s.add_argument("--oracle", action="store_true", help="also compute opt, wor and the ratio exactly")
    s.add_argument("--audit", action="store_true", help="run the structural audits and embed the result")
    s.add_argument("--mode", choices=("full", "fixed"), default="full", help="odd n: all guessed paths or only --paths")
    s.add_argument("--paths", help='odd n, fixed mode: guessed paths like "0,1,2,3;4,5,6,7"')
    s.add_argument("--threads", type=int, default=1, help="worker processes for the odd guess loop")
    s.add_argument("--seed", type=int, default=0, help="recorded in the report; the solver is deterministic")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest n the exact oracle accepts")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dist", default="uniform:0:100", help="uniform:LO:HI | euclidean:BOX | onetwo")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--name")
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("exact", help="shortest or longest tour by dynamic programming")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--objective", choices=("min", "max"), default="min")
    e.add_argument("--cap", type=int, default=DEFAULT_CAP)
    e.set_defaults(func=cmd_exact)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInputError, PreconditionError, OSError) as exc:
        code, err = EXIT_INPUT, exc
    except (InfeasibleError, ResourceGuardError) as exc:
        code, err = EXIT_INFEASIBLE, exc
    except InternalInvariantError as exc:
        code, err = EXIT_AUDIT, exc
    except DiffTSPError as exc:
        code, err = EXIT_AUDIT, exc
    print(f"error: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
