"""Retraction, retraction towers and multipermutation level."""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Perm, PointSet
from .solution import Solution, SolutionError, from_sigma_table


class RetractionError(RuntimeError):
    pass


@dataclass(frozen=True)
class RetractStep:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    induced: Solution


@dataclass(frozen=True)
class MpVerdict:
    level: int | None
    tower: tuple[int, ...]

    @property
    def is_multipermutation(self) -> bool:
        return self.level is not None

    def __str__(self):
        return f"level {self.level}" if self.level is not None else "not multipermutation"


def retract(s: Solution) -> RetractStep:
    """Quotient of ``s`` by ``x ~ y iff sigma_x = sigma_y``.

    Classes are ordered by their smallest point and labeled by it.  The
    induced sigma is checked to be well defined and the induced solution is
    fully validated.
    """
    n = s.n
    first: dict[Perm, int] = {}
    class_of = [0] * n
    members: list[list[int]] = []
    for x in range(n):
        c = first.get(s.sigma[x])
        if c is None:
            c = first[s.sigma[x]] = len(members)
            members.append([])
        members[c].append(x)
        class_of[x] = c
    k = len(members)
    induced = []
    for c, xs in enumerate(members):
        sx = s.sigma[xs[0]]
        img = [class_of[sx(ys[0])] for ys in members]
        for ys in members:
            for y in ys:
                if class_of[sx(y)] != img[class_of[y]]:
                    raise RetractionError(f"induced sigma not well defined at class {c}")
        induced.append(Perm(img))
    pts = PointSet(tuple(s.points.label(xs[0]) for xs in members))
    try:
        quotient = from_sigma_table(pts, induced)
    except SolutionError as e:
        raise RetractionError(f"retraction is not a valid solution: {e}") from e
    return RetractStep(tuple(map(tuple, members)), tuple(class_of), quotient)


def tower(s: Solution) -> list[RetractStep]:
    """Retraction steps until a singleton or an irretractable stage."""
    steps = []
    cur = s
    while cur.n > 1:
        step = retract(cur)
        steps.append(step)
        if step.induced.n == cur.n:
            break
        cur = step.induced
    return steps


def mp_level(s: Solution) -> MpVerdict:
    """Multipermutation level; a one-point solution has level 0."""
    sizes = [s.n]
    steps = tower(s)
    sizes.extend(st.induced.n for st in steps)
    if sizes[-1] == 1:
        return MpVerdict(len(steps), tuple(sizes))
    return MpVerdict(None, tuple(sizes))


def is_irretractable(s: Solution) -> bool:
    return len(set(s.sigma)) == s.n
