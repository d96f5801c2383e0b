"""Command line interface: ``ybx validate|analyze|retract-tower|enumerate|examples``.

Exit codes: 0 ok, 1 invalid input, 2 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .fileformat import EXAMPLES, NotPermutationLine, ParseError, example_text, format_solution, parse_sigma_table
from .permbrace import BraceVerificationError
from .retraction import RetractionError, is_irretractable, tower
from .solution import (
    MAX_ENUM,
    EnumerationTooLarge,
    SolutionError,
    enumerate_solutions,
    from_sigma_table,
    raw_sigma_tables,
    rtable_from_sigmas,
    validate,
)
from .structbrace import CrossCheckError, mp_verdict, series_lattices
from . import report

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2
INTERNAL_ERRORS = (CrossCheckError, BraceVerificationError, RetractionError)


def _load(path, out, err):
    """Parse and validate a file; returns a Solution or an exit code."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_INVALID
    try:
        pts, sigmas = parse_sigma_table(text)
        return from_sigma_table(pts, sigmas)
    except ParseError as e:
        print(f"{path}: parse error: {e}", file=err)
    except SolutionError as e:
        print(f"{path}: invalid solution ({e.kind}): {e}", file=err)
    return EXIT_INVALID


def _fmt_witness(pts, w):
    if isinstance(w, tuple) and w and isinstance(w[0], str):
        return f"{w[0]}_{pts.label(w[1])}"
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return " / ".join(_fmt_witness(pts, x) for x in w)
    return "(" + ",".join(pts.label(i) for i in w) + ")"


def cmd_validate(path, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        pts, sigmas = parse_sigma_table(Path(path).read_text())
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_INVALID
    except ParseError as e:
        kind = "non-degeneracy failure" if isinstance(e, NotPermutationLine) else "parse error"
        print(f"{path}: {kind}: {e}", file=err)
        return EXIT_INVALID
    v = validate(rtable_from_sigmas(pts, sigmas))
    for check in ("bijective", "nondegenerate", "involutive", "braid"):
        ok = getattr(v, check)
        line = f"{check}: {'ok' if ok else 'FAIL'}"
        if not ok:
            line += f" witness {_fmt_witness(pts, v.witnesses[check])}"
        print(line, file=out)
    print("valid" if v.ok else "invalid", file=out)
    return EXIT_OK if v.ok else EXIT_INVALID


def cmd_analyze(path, fmt="text", max_group_order=report.MAX_GROUP_ORDER,
                out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    s = _load(path, out, err)
    if isinstance(s, int):
        return s
    try:
        rep = report.analyze(s, max_group_order=max_group_order)
    except INTERNAL_ERRORS as e:
        print(f"internal cross-check failure: {e}", file=err)
        return EXIT_INTERNAL
    out.write(report.to_json(rep) if fmt == "json" else report.to_text(rep))
    return EXIT_OK


def tower_lines(s) -> list[str]:
    steps = tower(s)
    sizes = [s.n] + [st.induced.n for st in steps]
    head = " -> ".join(map(str, sizes))
    if sizes[-1] > 1:
        head += " (irretractable)"
    lines = [head]
    cur = s
    for k, st in enumerate(steps, 1):
        if st.induced.n == cur.n:
            break
        groups = ["{" + ",".join(cur.points.label(x) for x in c) + "}" for c in st.classes]
        lines.append(f"step {k}: " + " ".join(groups))
        cur = st.induced
    return lines


def cmd_retract_tower(path, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    s = _load(path, out, err)
    if isinstance(s, int):
        return s
    try:
        lines = tower_lines(s)
    except INTERNAL_ERRORS as e:
        print(f"internal cross-check failure: {e}", file=err)
        return EXIT_INTERNAL
    print("\n".join(lines), file=out)
    return EXIT_OK


def cmd_enumerate(n, dedup=False, dump=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        raw = list(raw_sigma_tables(n))
    except EnumerationTooLarge as e:
        print(f"error: {e}", file=err)
        return EXIT_INVALID
    classes = enumerate_solutions(n, dedup=True)
    sols = classes if dedup else enumerate_solutions(n)
    print(f"n={n}: {len(raw)} solutions, {len(classes)} up to relabeling", file=out)
    levels = Counter()
    irr = 0
    try:
        for s in sols:
            v = mp_verdict(s, series_lattices(s))
            levels[v.level if v.multipermutation else None] += 1
            irr += is_irretractable(s)
    except INTERNAL_ERRORS as e:
        print(f"internal cross-check failure: {e}", file=err)
        return EXIT_INTERNAL
    scope = "classes" if dedup else "solutions"
    for lvl in sorted(k for k in levels if k is not None):
        print(f"  level {lvl}: {levels[lvl]} {scope}", file=out)
    if None in levels:
        print(f"  not multipermutation: {levels[None]} {scope}", file=out)
    print(f"  irretractable: {irr} {scope}", file=out)
    print(f"  series and retraction verdicts agree on all {len(sols)} {scope}", file=out)
    if dump is not None:
        d = Path(dump)
        d.mkdir(parents=True, exist_ok=True)
        for i, s in enumerate(sols, 1):
            (d / f"n{n}-{i:04d}.ybx").write_text(format_solution(s))
        print(f"wrote {len(sols)} files to {d}", file=out)
    return EXIT_OK


def cmd_examples(name, output=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        text = example_text(name)
    except KeyError:
        print(f"error: unknown example {name!r}; available: {', '.join(EXAMPLES)}", file=err)
        return EXIT_INVALID
    if output is None:
        out.write(text)
    else:
        Path(output).write_text(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ybx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check braid, involutivity and non-degeneracy")
    sp.add_argument("path")

    sp = sub.add_parser("analyze", help="full analysis report")
    sp.add_argument("path")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--text", dest="fmt", action="store_const", const="text")
    sp.add_argument("--max-group-order", type=int, default=report.MAX_GROUP_ORDER)
    sp.set_defaults(fmt="text")

    sp = sub.add_parser("retract-tower", help="print the retraction tower")
    sp.add_argument("path")

    sp = sub.add_parser("enumerate", help=f"enumerate all solutions on n <= {MAX_ENUM} points")
    sp.add_argument("n", type=int)
    sp.add_argument("--dedup", action="store_true", help="statistics per relabeling class")
    sp.add_argument("--dump", metavar="DIR", help="write each solution to DIR")

    sp = sub.add_parser("examples", help="emit a bundled example file")
    sp.add_argument("name", help=", ".join(EXAMPLES))
    sp.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.path)
    if args.command == "analyze":
        return cmd_analyze(args.path, args.fmt, args.max_group_order)
    if args.command == "retract-tower":
        return cmd_retract_tower(args.path)
    if args.command == "enumerate":
        return cmd_enumerate(args.n, args.dedup, args.dump)
    return cmd_examples(args.name, args.output)


if __name__ == "__main__":
    sys.exit(main())
