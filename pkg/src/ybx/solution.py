"""Finite set-theoretic solutions of the Yang-Baxter equation.

An involutive non-degenerate solution is stored as its sigma-table
``x -> sigma_x``; the second coordinate map is derived from it as
``gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x)``.  General (possibly
non-involutive) maps ``X x X -> X x X`` are held in an :class:`RTable`.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .perm import FiniteGroup, Perm, PointSet, closure, conjugate, inverse


class SolutionError(ValueError):
    """Validation failure; ``witness`` is the offending pair or triple."""

    kind = "invalid"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotBijectiveError(SolutionError):
    kind = "bijective"


class BraidError(SolutionError):
    kind = "braid"


class NotInvolutiveError(SolutionError):
    kind = "involutive"


class DegenerateError(SolutionError):
    kind = "nondegenerate"


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class RTable:
    """The map ``r`` tabulated as ``pairs[x * n + y] = (u, v)``."""

    points: PointSet
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.points)
        if len(self.pairs) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(self.pairs)}")

    @property
    def n(self) -> int:
        return len(self.points)

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return self.pairs[x * len(self.points) + y]

    @classmethod
    def from_function(cls, points: PointSet, r) -> RTable:
        n = len(points)
        return cls(points, tuple(r(x, y) for x in range(n) for y in range(n)))

    def sigma_images(self, x: int) -> tuple[int, ...]:
        return tuple(self(x, y)[0] for y in range(self.n))

    def gamma_images(self, y: int) -> tuple[int, ...]:
        return tuple(self(x, y)[1] for x in range(self.n))


@dataclass
class Validation:
    bijective: bool = True
    braid: bool = True
    involutive: bool = True
    nondegenerate: bool = True
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.bijective and self.braid and self.involutive and self.nondegenerate

    def first_error(self) -> SolutionError | None:
        w = self.witnesses
        if not self.bijective:
            return NotBijectiveError(f"r is not bijective: pairs {w['bijective']} share an image",
                                     w["bijective"])
        if not self.nondegenerate:
            kind, pt = w["nondegenerate"]
            return DegenerateError(f"{kind}_{pt} is not a permutation", w["nondegenerate"])
        if not self.involutive:
            return NotInvolutiveError(f"r(r(x,y)) != (x,y) at {w['involutive']}", w["involutive"])
        if not self.braid:
            return BraidError(f"braid relation fails at triple {w['braid']}", w["braid"])
        return None


def check_bijective(r: RTable):
    """Return ``None`` if ``r`` is a bijection, else two pairs with equal image."""
    seen = {}
    n = r.n
    for x in range(n):
        for y in range(n):
            img = r(x, y)
            if img in seen:
                return (seen[img], (x, y))
            seen[img] = (x, y)
    return None


def braid_witness(r: RTable):
    """First triple where the braid relation fails, or ``None``."""
    n = r.n
    pairs = r.pairs
    for x in range(n):
        for y in range(n):
            a, b = pairs[x * n + y]
            for z in range(n):
                # left: (r x id)(id x r)(r x id)
                b2, c = pairs[b * n + z]
                a3, b3 = pairs[a * n + b2]
                left = (a3, b3, c)
                # right: (id x r)(r x id)(id x r)
                q, w = pairs[y * n + z]
                p, q2 = pairs[x * n + q]
                q3, w3 = pairs[q2 * n + w]
                if left != (p, q3, w3):
                    return (x, y, z)
    return None


def check_braid(r: RTable) -> bool:
    return braid_witness(r) is None


def involutive_witness(r: RTable):
    n = r.n
    for x in range(n):
        for y in range(n):
            if r(*r(x, y)) != (x, y):
                return (x, y)
    return None


def check_involutive(r: RTable) -> bool:
    return involutive_witness(r) is None


def nondegenerate_witness(r: RTable):
    n = r.n
    full = set(range(n))
    for x in range(n):
        if set(r.sigma_images(x)) != full:
            return ("sigma", x)
    for y in range(n):
        if set(r.gamma_images(y)) != full:
            return ("gamma", y)
    return None


def check_nondegenerate(r: RTable) -> bool:
    return nondegenerate_witness(r) is None


def validate(r: RTable) -> Validation:
    """Run every check, recording a witness for each failure."""
    v = Validation()
    if (w := check_bijective(r)) is not None:
        v.bijective = False
        v.witnesses["bijective"] = w
    if (w := nondegenerate_witness(r)) is not None:
        v.nondegenerate = False
        v.witnesses["nondegenerate"] = w
    if (w := involutive_witness(r)) is not None:
        v.involutive = False
        v.witnesses["involutive"] = w
    if (w := braid_witness(r)) is not None:
        v.braid = False
        v.witnesses["braid"] = w
    return v


def rtable_from_sigmas(points: PointSet, sigmas: Sequence[Perm]) -> RTable:
    """``r(x,y) = (sigma_x(y), sigma^{-1}_{sigma_x(y)}(x))``."""
    n = len(points)
    if len(sigmas) != n:
        raise ValueError(f"expected {n} permutations, got {len(sigmas)}")
    inv = [inverse(s).images for s in sigmas]
    pairs = []
    for x in range(n):
        sx = sigmas[x].images
        for y in range(n):
            u = sx[y]
            pairs.append((u, inv[u][x]))
    return RTable(points, tuple(pairs))


@dataclass(frozen=True)
class Solution:
    """A validated involutive non-degenerate solution given by its sigma-table.

    Build with :func:`from_sigma_table`; direct construction skips validation.
    """

    points: PointSet
    sigma: tuple[Perm, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    # always true for instances built by from_sigma_table
    involutive = True
    nondegenerate = True

    @cached_property
    def sigma_inv(self) -> tuple[Perm, ...]:
        return tuple(inverse(s) for s in self.sigma)

    @cached_property
    def gamma(self) -> tuple[Perm, ...]:
        n = self.n
        out = []
        for y in range(n):
            out.append(Perm(self.sigma_inv[self.sigma[x](y)](x) for x in range(n)))
        return tuple(out)

    @cached_property
    def rtable(self) -> RTable:
        return rtable_from_sigmas(self.points, self.sigma)

    def r(self, x: int, y: int) -> tuple[int, int]:
        u = self.sigma[x](y)
        return u, self.sigma_inv[u](x)

    @cached_property
    def group(self) -> FiniteGroup:
        """The permutation group generated by the sigmas (unbounded)."""
        return closure(self.sigma, self.n)

    def sigma_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s.images for s in self.sigma)


def from_sigma_table(points: PointSet, sigmas: Sequence[Perm]) -> Solution:
    """Build and validate a solution; raises a :class:`SolutionError` subclass."""
    for s in sigmas:
        if s.degree != len(points):
            raise ValueError("sigma acts on the wrong number of points")
    r = rtable_from_sigmas(points, sigmas)
    err = validate(r).first_error()
    if err is not None:
        raise err
    return Solution(points, tuple(sigmas))


def as_solution(r: RTable) -> Solution:
    """Convert an RTable to a :class:`Solution`, rejecting non-involutive input."""
    v = validate(r)
    if (err := v.first_error()) is not None:
        raise err
    sigmas = [Perm(r.sigma_images(x)) for x in range(r.n)]
    return Solution(r.points, tuple(sigmas))


def flip_solution(n: int) -> Solution:
    """``r(x, y) = (y, x)``: every sigma is the identity."""
    pts = PointSet.standard(n)
    return from_sigma_table(pts, [Perm.identity(n)] * n)


def permutation_solution(p: Perm) -> Solution:
    """All sigma_x equal to ``p``."""
    pts = PointSet.standard(p.degree)
    return from_sigma_table(pts, [p] * p.degree)


def conjugation_solution(g: FiniteGroup, class_rep: Perm) -> RTable:
    """The rack solution ``r(x, y) = (x y x^-1, x)`` on the class of ``class_rep``.

    Points are the class elements sorted by image tuple.  This map is never
    involutive when the class generates a non-abelian group; a warning is
    raised when it generates an abelian one.
    """
    if class_rep not in g:
        raise ValueError("class representative is not in the group")
    cls = sorted({conjugate(a, class_rep) for a in g.elements})
    if closure(cls).is_abelian():
        warnings.warn("conjugacy class generates an abelian subgroup", stacklevel=2)
    index = {c: i for i, c in enumerate(cls)}
    n = len(cls)
    pts = PointSet.standard(n)
    return RTable.from_function(pts, lambda x, y: (index[conjugate(cls[x], cls[y])], x))


def diagonal_map(s: Solution) -> Perm:
    """``T(x) = sigma_x^{-1}(x)``; checked to be a bijection."""
    imgs = [s.sigma_inv[x](x) for x in range(s.n)]
    if sorted(imgs) != list(range(s.n)):
        raise SolutionError("diagonal map is not bijective", witness=tuple(imgs))
    return Perm(imgs)


# enumeration -----------------------------------------------------------------

MAX_ENUM = 4


def _cycle_condition_ok(sig, k, inv, n):
    """Necessary condition on assigned sigmas ``0..k``:
    ``sigma_x sigma_y = sigma_u sigma_v`` whenever ``r(x, y) = (u, v)``."""
    for x in range(k + 1):
        for y in range(k + 1):
            if x != k and y != k:
                continue
            u = sig[x][y]
            if u > k:
                continue
            v = inv[u][x]
            if v > k:
                continue
            lhs = tuple(sig[x][sig[y][i]] for i in range(n))
            rhs = tuple(sig[u][sig[v][i]] for i in range(n))
            if lhs != rhs:
                return False
    return True


def raw_sigma_tables(n: int, prune: bool = True):
    """Yield every sigma-table on ``n`` points passing full validation.

    With ``prune`` the search is cut by a necessary condition on partial
    tables; without it every one of ``(n!)^n`` tables is validated.
    """
    if not 1 <= n <= MAX_ENUM:
        raise EnumerationTooLarge(f"enumeration supports 1 <= n <= {MAX_ENUM}, got {n}")
    pts = PointSet.standard(n)
    perms = list(itertools.permutations(range(n)))
    inv_of = {}
    for p in perms:
        q = [0] * n
        for i, j in enumerate(p):
            q[j] = i
        inv_of[p] = tuple(q)

    def finish(table):
        r = rtable_from_sigmas(pts, [Perm._raw(p) for p in table])
        return validate(r).ok

    if not prune:
        for table in itertools.product(perms, repeat=n):
            if finish(table):
                yield table
        return

    sig: list = []
    inv: list = []

    def rec(k):
        if k == n:
            if finish(sig):
                yield tuple(sig)
            return
        for p in perms:
            sig.append(p)
            inv.append(inv_of[p])
            if _cycle_condition_ok(sig, k, inv, n):
                yield from rec(k + 1)
            sig.pop()
            inv.pop()

    yield from rec(0)


def relabel(table, f) -> tuple[tuple[int, ...], ...]:
    """Sigma-table transported along the bijection ``f``: ``sigma'_{f(x)} = f sigma_x f^-1``."""
    n = len(table)
    finv = [0] * n
    for i, j in enumerate(f):
        finv[j] = i
    out = [None] * n
    for x in range(n):
        sx = table[x]
        out[f[x]] = tuple(f[sx[finv[i]]] for i in range(n))
    return tuple(out)


def canonical_form(table) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabeling of a sigma-table."""
    n = len(table)
    return min(relabel(table, f) for f in itertools.permutations(range(n)))


def enumerate_solutions(n: int, dedup: bool = False) -> list[Solution]:
    """All involutive non-degenerate solutions on ``n <= 4`` labeled points.

    Sorted by sigma-table; with ``dedup`` one canonical representative per
    relabeling class, sorted by canonical form.
    """
    tables = sorted(raw_sigma_tables(n))
    if dedup:
        tables = sorted({canonical_form(t) for t in tables})
    pts = PointSet.standard(n)
    return [Solution(pts, tuple(Perm._raw(p) for p in t)) for t in tables]
