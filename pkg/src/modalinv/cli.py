"""Command-line front end.

Exit codes follow SAT-solver practice: 10 satisfiable, 20 unsatisfiable,
0 for meta commands (and undecided runs), 1 for usage or parse errors and
2 when ``xcheck`` finds a discrepancy.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .automaton import AutomatonTooLarge, build_automaton, dump_automaton
from .engines import (ENGINES, Budget, EngineRefused, cross_check, error_verdict,
                      minimize, report_line, run_engine)
from .formula import Formula, ParseError, parse, render, to_nnf
from .inverse import format_trace
from .oracle import ClosureTooLarge, dump_model
from .paths import build_path_table, dump_paths, format_set
from .verdict import ERROR, INCONCLUSIVE, SAT, UNSAT

EXIT_SAT, EXIT_UNSAT, EXIT_OK, EXIT_USAGE, EXIT_DISCREPANCY = 10, 20, 0, 1, 2


class UsageError(Exception):
    pass


class UnreadableFile(UsageError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_formula(arg: str, what: str = "formula") -> Formula:
    """Parse an inline formula or ``file:<path>`` and convert it to NNF."""
    if arg.startswith("file:"):
        path = arg[len("file:"):]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            reason = getattr(exc, "strerror", None) or exc
            raise UnreadableFile(f"cannot read {what} file {path}: {reason}") from exc
        source = path
    else:
        text, source = arg, what
    try:
        return to_nnf(parse(text))
    except ParseError as exc:
        raise UsageError(_diagnostic(source, text, exc)) from exc


def _diagnostic(source: str, text: str, exc: ParseError) -> str:
    line = text.rstrip("\n")
    if "\n" in line:
        return f"{source}: {exc}"
    return f"{source}: {exc}\n  {line}\n  {' ' * exc.offset}^"


def _axiom(args) -> Formula | None:
    if args.axiom is not None and args.axiom_file is not None:
        raise UsageError("give at most one of --axiom and --axiom-file")
    if args.axiom is not None:
        return read_formula(args.axiom, "axiom")
    if args.axiom_file is not None:
        return read_formula("file:" + args.axiom_file, "axiom")
    return None


def _budget(args) -> Budget:
    return Budget(max_sequents=args.budget_seq, max_inferences=args.budget_inf)


def _exit_for(status: str) -> int:
    return {SAT: EXIT_SAT, UNSAT: EXIT_UNSAT}.get(status, EXIT_OK)


# -- subcommands -------------------------------------------------------------

def cmd_solve(args, out) -> int:
    g = read_formula(args.formula)
    h = _axiom(args)
    if h is not None and args.engine == "inverse-opt":
        print("note: with a global axiom inverse-opt runs the unordered calculus",
              file=sys.stderr)
    try:
        v = run_engine(args.engine, g, h, _budget(args))
    except (AutomatonTooLarge, ClosureTooLarge, EngineRefused) as exc:
        raise UsageError(str(exc)) from exc
    print(v.status, file=out)
    print(report_line(v, timing=not args.no_timing), file=out)
    if args.trace:
        if v.proof is not None:
            print(format_trace(v.trace, v.proof), end="", file=out)
        elif not v.engine.startswith("inverse"):
            print(f"note: engine {v.engine} produces no derivation trace", file=sys.stderr)
    if args.model:
        if v.model is not None:
            print(dump_model(v.model), end="", file=out)
        elif v.status == SAT:
            print(f"note: engine {v.engine} produces no model", file=sys.stderr)
    return _exit_for(v.status)


def cmd_xcheck(args, out) -> int:
    g = read_formula(args.formula)
    h = _axiom(args)
    budget = _budget(args)
    cc = cross_check(g, h, deep=args.deep, budget=budget)
    timing = not args.no_timing
    for v in cc.verdicts.values():
        print(report_line(v, timing=timing), file=out)
    for name, reason in cc.skipped.items():
        print(f"engine={name} skipped: {reason}", file=out)
    n = len(cc.verdicts)
    if args.deep:
        detail = (f"deep: {cc.deep_checks} state-set equality" if cc.deep_checks
                  else "deep: skipped")
        detail = f"{n} engines, {detail}"
    else:
        detail = f"{n} engines"
    if cc.agree:
        print(f"AGREE/{cc.status}", file=out)
        print(f"AGREE ({detail})", file=out)
        return EXIT_OK
    verdicts = " ".join(f"{k}={v.status}" for k, v in cc.verdicts.items())
    print(f"DISAGREE verdicts: {verdicts}", file=out)
    if cc.deep_mismatch:
        a = build_automaton(build_path_table(g, h))
        first = cc.deep_mismatch[0]
        print(f"DISAGREE deep: {len(cc.deep_mismatch)} states differ; first: "
              f"state {first} {format_set(a.states[first])}", file=out)
    small = minimize(g, lambda f: not cross_check(f, h, deep=args.deep,
                                                  budget=budget).agree)
    print(f"minimized: {render(small)}", file=out)
    return EXIT_DISCREPANCY


def cmd_bench(args, out) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise UsageError(f"not a directory: {root}")
    timing = not args.no_timing
    rows = []
    status = EXIT_OK
    for path in sorted(root.glob("*.k")):
        fatal = False
        try:
            g = read_formula(f"file:{path}")
            ax = path.with_suffix(".ax")
            h = read_formula(f"file:{ax}", "axiom") if ax.exists() else None
            v = run_engine(args.engine, g, h, _budget(args))
        except UnreadableFile as exc:
            v = error_verdict(args.engine, exc)
        except (UsageError, AutomatonTooLarge, ClosureTooLarge, EngineRefused) as exc:
            v = error_verdict(args.engine, exc)
            fatal = not args.keep_going
        if v.status == ERROR:
            print(f"{path.name}: {v.stats['error']}", file=sys.stderr)
        rows.append((path.name, v))
        print(report_line(v, path.name, timing), file=out)
        if fatal:
            status = EXIT_USAGE
            break
    tally = {s: sum(1 for _, v in rows if v.status == s)
             for s in (SAT, UNSAT, INCONCLUSIVE, ERROR)}
    summary = (f"summary files={len(rows)} sat={tally[SAT]} unsat={tally[UNSAT]} "
               f"inconclusive={tally[INCONCLUSIVE]} error={tally[ERROR]}")
    if timing:
        summary += f" ms={sum(v.stats.get('ms', 0.0) for _, v in rows):.1f}"
    print(summary, file=out)
    if args.plot:
        from .plotting import bench_figure
        bench_figure(rows, args.plot, timing)
        print(f"figure={args.plot}", file=out)
    return status


def cmd_dump_paths(args, out) -> int:
    t = build_path_table(read_formula(args.formula), _axiom(args))
    print(dump_paths(t), end="", file=out)
    return EXIT_OK


def cmd_dump_automaton(args, out) -> int:
    t = build_path_table(read_formula(args.formula), _axiom(args))
    try:
        a = build_automaton(t, reduced=args.reduced)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(dump_automaton(a), end="", file=out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    axiom = _Parser(add_help=False)
    axiom.add_argument("--axiom", metavar="FORMULA",
                       help="global axiom, inline or file:<path>")
    axiom.add_argument("--axiom-file", metavar="PATH", help="global axiom read from a file")
    run = _Parser(add_help=False)
    run.add_argument("--no-timing", action="store_true",
                     help="omit timing fields so reports are byte-identical")
    run.add_argument("--budget-seq", type=int, default=1 << 20, metavar="N",
                     help="maximum number of kept sequents (default %(default)s)")
    run.add_argument("--budget-inf", type=int, default=1 << 24, metavar="N",
                     help="maximum number of attempted inferences (default %(default)s)")
    engine = _Parser(add_help=False)
    engine.add_argument("--engine", choices=ENGINES, default="inverse-opt")

    p = _Parser(prog="modalinv", description="Satisfiability in modal logic K.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[axiom, run, engine], help="decide one formula")
    s.add_argument("formula", help="formula text or file:<path>")
    s.add_argument("--trace", action="store_true", help="print the derivation of an UNSAT verdict")
    s.add_argument("--model", action="store_true", help="print a model of a SAT verdict")
    s.set_defaults(func=cmd_solve)

    x = sub.add_parser("xcheck", parents=[axiom, run], help="compare all applicable engines")
    x.add_argument("formula")
    x.add_argument("--deep", action="store_true",
                   help="also compare inactive states with the closure concretization")
    x.set_defaults(func=cmd_xcheck)

    b = sub.add_parser("bench", parents=[run, engine], help="solve every .k file in a directory")
    b.add_argument("directory")
    b.add_argument("--keep-going", action="store_true", help="continue after a failing file")
    b.add_argument("--plot", metavar="FILE", help="write a bar chart of the run")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("dump-paths", parents=[axiom], help="print the path table")
    d.add_argument("formula")
    d.set_defaults(func=cmd_dump_paths)

    a = sub.add_parser("dump-automaton", parents=[axiom], help="print the formula automaton")
    a.add_argument("formula")
    a.add_argument("--reduced", action="store_true", help="drop redundant states")
    a.set_defaults(func=cmd_dump_automaton)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
