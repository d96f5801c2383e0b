"""The structure brace of a solution on the free abelian group ``Z^(X)``.

Vectors are dense integer tuples indexed by points.  ``lambda_v`` is computed
by peeling one signed basis vector at a time,

    lambda_{e + w} = lambda_e o lambda_{lambda_e^{-1}(w)},

with ``lambda_y = sigma_y`` and ``lambda_{-y} = sigma_{T^{-1}(y)}^{-1}`` where
``T(x) = sigma_x^{-1}(x)`` is the diagonal map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .perm import FiniteGroup, Perm, closure, compose, inverse, orbits
from .permbrace import PermBrace
from .permbrace import build as build_permbrace
from .retraction import mp_level
from .solution import Solution, diagonal_map

IntVec = tuple[int, ...]

MEMO_NORM = 6


class CrossCheckError(AssertionError):
    pass


def zero(n: int) -> IntVec:
    return (0,) * n


def basis(n: int, i: int, sign: int = 1) -> IntVec:
    v = [0] * n
    v[i] = sign
    return tuple(v)


def vadd(v: IntVec, w: IntVec) -> IntVec:
    return tuple(a + b for a, b in zip(v, w))


def vneg(v: IntVec) -> IntVec:
    return tuple(-a for a in v)


def vsub(v: IntVec, w: IntVec) -> IntVec:
    return tuple(a - b for a, b in zip(v, w))


def norm1(v: IntVec) -> int:
    return sum(abs(a) for a in v)


def permute_vec(p: Perm, v: IntVec) -> IntVec:
    """Coordinate action: ``sum v_x e_x -> sum v_x e_{p(x)}``."""
    out = [0] * len(v)
    for x, a in enumerate(v):
        if a:
            out[p.images[x]] += a
    return tuple(out)


class StructureBrace:
    """Brace arithmetic on ``Z^(X)`` for a fixed solution."""

    def __init__(self, s: Solution):
        self.solution = s
        self.n = s.n
        self.sigma = s.sigma
        self.sigma_inv = s.sigma_inv
        t = diagonal_map(s)
        t_inv = inverse(t)
        # lambda of -e_y is sigma_{T^-1(y)}^-1
        self.neg_base = tuple(self.sigma_inv[t_inv.images[y]] for y in range(self.n))
        self.identity = Perm.identity(self.n)
        self._memo: dict[IntVec, Perm] = {}

    def _unit_lambda(self, i: int, sign: int) -> Perm:
        return self.sigma[i] if sign > 0 else self.neg_base[i]

    def lam(self, v: IntVec, rng: random.Random | None = None) -> Perm:
        """``lambda_v`` as a permutation of the points.

        Peels the lowest nonzero coordinate first unless ``rng`` is given, in
        which case the coordinate is picked at random.
        """
        if rng is None:
            hit = self._memo.get(v)
            if hit is not None:
                return hit
        acc = self.identity
        w = list(v)
        steps = 0
        while True:
            support = [i for i, a in enumerate(w) if a]
            if not support:
                break
            i = rng.choice(support) if rng is not None else support[0]
            sign = 1 if w[i] > 0 else -1
            p = self._unit_lambda(i, sign)
            acc = compose(acc, p)
            w[i] -= sign
            # w <- lambda_e^{-1}(w): new coordinate y carries old coordinate p(y)
            w = [w[p.images[y]] for y in range(self.n)]
            steps += 1
        assert steps == norm1(v)
        if rng is None and norm1(v) <= MEMO_NORM:
            self._memo[v] = acc
        return acc

    def mul(self, v: IntVec, w: IntVec) -> IntVec:
        return vadd(v, permute_vec(self.lam(v), w))

    def inv(self, v: IntVec) -> IntVec:
        r = vneg(permute_vec(inverse(self.lam(v)), v))
        if any(self.mul(v, r)):
            raise CrossCheckError(f"inverse of {v} failed")
        return r

    def in_socle(self, v: IntVec) -> bool:
        return self.lam(v).is_identity()


# HNF lattices ----------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Row-style Hermite normal form basis of a subgroup of ``Z^n``."""

    dim: int
    basis: tuple[IntVec, ...]
    pivots: tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return lattice_member(self, tuple(v))


def hnf(rows: Sequence[IntVec], dim: int | None = None) -> Lattice:
    """Canonical HNF: positive pivots, entries above each pivot in ``[0, pivot)``."""
    rows = [list(r) for r in rows]
    if dim is None:
        if not rows:
            raise ValueError("dim required for an empty row list")
        dim = len(rows[0])
    rows = [r for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in range(dim):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, prev in enumerate(out):
            q = prev[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        pivots.append(col)
        rows = [r for r in rest if any(r)]
    return Lattice(dim, tuple(tuple(r) for r in out), tuple(pivots))


def lattice_member(lat: Lattice, v: IntVec) -> bool:
    v = list(v)
    for row, col in zip(lat.basis, lat.pivots):
        q, rem = divmod(v[col], row[col])
        if rem:
            return False
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


# series ----------------------------------------------------------------------


@dataclass
class SeriesReport:
    lattices: list[Lattice]
    perm_images: list[FiniteGroup]
    orbit_history: list[list[tuple[int, ...]]]
    multipermutation: bool
    stabilization_index: int

    @property
    def lattice_ranks(self) -> list[int]:
        return [lat.rank for lat in self.lattices]

    @property
    def perm_orders(self) -> list[int]:
        return [g.order for g in self.perm_images]


def series_lattices(s: Solution, limit: int | None = None,
                    sb: StructureBrace | None = None) -> SeriesReport:
    """Rump series of the structure brace via orbit differences.

    ``G^(m+1)`` is spanned by ``y - x`` for ``x, y`` in one orbit of ``P_m``,
    the lambda-image of ``G^(m)``; ``P_(m+1)`` is generated by the images of
    those differences.  Stops at the first ``m`` with ``P_(m+1) = P_m``.
    """
    sb = sb or StructureBrace(s)
    n = s.n
    cur = closure(s.sigma, n, limit=limit)
    perm_images = [cur]
    lattices = []
    history = []
    while True:
        orbs = orbits(cur.generators, n)
        history.append(orbs)
        rows = [vsub(basis(n, y), basis(n, orb[0])) for orb in orbs for y in orb[1:]]
        lattices.append(hnf(rows, n))
        gens = sorted({sb.lam(vsub(basis(n, y), basis(n, x)))
                       for orb in orbs for x in orb for y in orb if x != y})
        gens = [g for g in gens if not g.is_identity()]
        nxt = closure(gens, n, limit=limit)
        if not nxt.element_set() <= cur.element_set():
            raise CrossCheckError("lambda-images of the series are not descending")
        if nxt.element_set() == cur.element_set():
            break
        perm_images.append(nxt)
        cur = nxt
    stab = len(perm_images)
    return SeriesReport(lattices, perm_images, history, cur.is_trivial(), stab)


@dataclass(frozen=True)
class MpResult:
    multipermutation: bool
    level: int | None

    def __str__(self):
        return f"multipermutation level {self.level}" if self.multipermutation else "not multipermutation"


def pi_cross_check(s: Solution, report: SeriesReport | None = None,
                   brace: PermBrace | None = None) -> bool:
    """Compare ``lambda(G^(m))`` with the intrinsic series of the permutation brace."""
    report = report or series_lattices(s)
    brace = brace or build_permbrace(s)
    left = [g.element_set() for g in report.perm_images]
    right = [t.elements for t in brace.series()]
    return left == right


def mp_verdict(s: Solution, report: SeriesReport | None = None) -> MpResult:
    """Series verdict, with the level read off the retraction tower.

    Raises :class:`CrossCheckError` if the two routes disagree.
    """
    report = report or series_lattices(s)
    tower = mp_level(s)
    if report.multipermutation != tower.is_multipermutation:
        raise CrossCheckError(
            f"series says {report.multipermutation}, retraction says {tower}")
    return MpResult(report.multipermutation, tower.level)


def _sb(s: Solution) -> StructureBrace:
    return StructureBrace(s)


def lambda_vec(s: Solution, v: IntVec) -> Perm:
    return _sb(s).lam(tuple(v))


def mul(s: Solution, v: IntVec, w: IntVec) -> IntVec:
    return _sb(s).mul(tuple(v), tuple(w))


def inv(s: Solution, v: IntVec) -> IntVec:
    return _sb(s).inv(tuple(v))


def in_socle(s: Solution, v: IntVec) -> bool:
    return _sb(s).in_socle(tuple(v))
