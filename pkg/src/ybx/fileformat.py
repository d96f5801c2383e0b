"""The ``ybx v1`` solution file format and the bundled example files.

::

    ybx v1 n=4 labels=1234
    # comment
    1: (12)
    2: ()
    ...

One ``<label>: <cycles>`` line per point gives sigma of that point; the
second coordinate map is never stored.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .perm import CycleSyntaxError, Perm, PointSet, RepeatedLabelError, format_cycles, parse_cycles
from .solution import Solution, from_sigma_table

_HEADER = re.compile(r"^ybx v1 n=(\d+) labels=(\S+)$")

EXAMPLES = {
    "paper-16-91": "example2.ybx",
    "paper-16-318": "example3.ybx",
    "paper-24-96": "example4.ybx",
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class NotPermutationLine(ParseError):
    """A sigma line that does not describe a bijection."""

    def __init__(self, label: str, line: int, detail: str):
        super().__init__(f"sigma_{label} is not a bijection ({detail})", line)
        self.label = label


def parse_sigma_table(text: str) -> tuple[PointSet, list[Perm]]:
    """Parse file text into points and sigmas without validating the solution."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty file")
    lineno, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise ParseError(f"bad header {head!r}", lineno)
    n = int(m.group(1))
    try:
        pts = PointSet.from_string(m.group(2))
    except ValueError as e:
        raise ParseError(str(e), lineno) from None
    if len(pts) != n:
        raise ParseError(f"n={n} but {len(pts)} labels", lineno)
    sigmas: dict[int, Perm] = {}
    for lineno, ln in lines[1:]:
        label, sep, cycles = ln.partition(":")
        label = label.strip()
        if not sep:
            raise ParseError(f"expected '<label>: <cycles>', got {ln!r}", lineno)
        try:
            x = pts.index(label)
        except KeyError:
            raise ParseError(f"unknown label {label!r}", lineno) from None
        if x in sigmas:
            raise ParseError(f"duplicate line for {label!r}", lineno)
        try:
            sigmas[x] = parse_cycles(cycles, pts)
        except RepeatedLabelError as e:
            raise NotPermutationLine(label, lineno, str(e)) from None
        except CycleSyntaxError as e:
            raise ParseError(str(e), lineno) from None
    if len(sigmas) != n:
        missing = [pts.label(x) for x in range(n) if x not in sigmas]
        raise ParseError(f"missing sigma lines for {''.join(missing)}")
    return pts, [sigmas[x] for x in range(n)]


def parse_solution(text: str) -> Solution:
    pts, sigmas = parse_sigma_table(text)
    return from_sigma_table(pts, sigmas)


def load_solution(path) -> Solution:
    return parse_solution(Path(path).read_text())


def format_solution(s: Solution) -> str:
    lines = [f"ybx v1 n={s.n} labels={s.points}"]
    for x, sig in enumerate(s.sigma):
        lines.append(f"{s.points.label(x)}: {format_cycles(sig, s.points)}")
    return "\n".join(lines) + "\n"


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(EXAMPLES)}")
    return resources.files("ybx").joinpath("data", EXAMPLES[name]).read_text()


def load_example(name: str) -> Solution:
    return parse_solution(example_text(name))
