"""The finite left brace on the permutation group of a solution.

The additive structure is never transported from ``Z^(X)``.  Every element
``u = sigma_{x1} ... sigma_{xk}`` is decomposed through the cocycle into a
multiset of points ``{z_1, ..., z_k}`` with ``z_i = (sigma_{x1}...sigma_{x(i-1)})(x_i)``,
and sums are folded one generator at a time with
``acc + sigma_z = acc o sigma_{acc^-1(z)}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from .perm import (
    ISO_ORDER_BOUND,
    FiniteGroup,
    Perm,
    closure,
    compose,
    conjugate,
    inverse,
    subgroup,
    subgroups,
)
from .solution import Solution

EXHAUSTIVE_LIMIT = 64
SAMPLE_TRIPLES = 10_000


class BraceVerificationError(AssertionError):
    pass


@dataclass(frozen=True)
class BraceIdeal:
    group: FiniteGroup
    is_ideal: bool
    is_socle: bool = False

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def elements(self) -> frozenset[Perm]:
        return self.group.element_set()


class PermBrace:
    """Left brace structure on the group generated by the sigmas of a solution."""

    def __init__(self, solution: Solution, group: FiniteGroup):
        self.solution = solution
        self.group = group
        self.gen_of = solution.sigma
        self.identity = group.identity
        self._decomp: dict[Perm, tuple[int, ...]] = {}
        self._sum: dict[tuple[Perm, Perm], Perm] = {}
        for u in group.elements:
            self._decomp[u] = self._decompose_word(group.words[u])

    @property
    def order(self) -> int:
        return self.group.order

    def _decompose_word(self, word) -> tuple[int, ...]:
        acc = self.identity
        zs = []
        for x in word:
            zs.append(acc.images[x])
            acc = compose(acc, self.gen_of[x])
        return tuple(sorted(zs))

    def _fold(self, acc: Perm, zs: Iterable[int]) -> Perm:
        sig = self.gen_of
        for z in zs:
            acc = compose(acc, sig[acc.images.index(z)])
        return acc

    def decompose(self, u: Perm) -> tuple[int, ...]:
        return self._decomp[u]

    def add(self, u: Perm, v: Perm) -> Perm:
        key = (u, v)
        r = self._sum.get(key)
        if r is None:
            r = self._sum[key] = self._fold(u, self._decomp[v])
        return r

    def mul(self, u: Perm, v: Perm) -> Perm:
        return compose(u, v)

    def lam(self, u: Perm, v: Perm) -> Perm:
        """``lambda_u(v)``: map each summand ``sigma_y`` of ``v`` to ``sigma_{u(y)}``."""
        return self._fold(self.identity, [u.images[z] for z in self._decomp[v]])

    def neg(self, u: Perm) -> Perm:
        # -u = u u^-1 - u = lambda_u(u^-1)
        return self.lam(u, inverse(u))

    def sub(self, u: Perm, v: Perm) -> Perm:
        return self.add(u, self.neg(v))

    def star(self, u: Perm, v: Perm) -> Perm:
        """``u * v = uv - u - v``, checked against ``lambda_u(v) - v``."""
        r = self.sub(self.sub(compose(u, v), u), v)
        alt = self.sub(self.lam(u, v), v)
        if r != alt:
            raise BraceVerificationError(f"star mismatch at {u}, {v}")
        return r

    def additive_span(self, gens: Iterable[Perm]) -> frozenset[Perm]:
        """Subgroup of ``(G, +)`` generated by ``gens``."""
        span = {self.identity}
        for g in gens:
            if g in span:
                continue
            multiples = [self.identity]
            m = g
            while m not in span:
                multiples.append(m)
                m = self.add(m, g)
            span = {self.add(a, k) for a in span for k in multiples}
        return frozenset(span)

    # structure -------------------------------------------------------------

    def socle(self) -> BraceIdeal:
        sig = self.gen_of
        n = self.solution.n
        els = [u for u in self.group.elements
               if all(sig[u.images[y]] == sig[y] for y in range(n))]
        grp = subgroup(self.group, els)
        return BraceIdeal(grp, self.is_ideal(grp), is_socle=True)

    def is_ideal(self, sub: FiniteGroup | Iterable[Perm]) -> bool:
        """Normal in ``(G, .)``, invariant under every ``lambda_a`` and closed under ``+``."""
        if isinstance(sub, FiniteGroup):
            els = sub.element_set()
            gens = list(sub.generators)
        else:
            els = frozenset(sub)
            gens = list(els)
        if not els <= self.group.element_set():
            raise ValueError("not a subset of the brace")
        if self.identity not in els:
            raise ValueError("not a subgroup")
        if not isinstance(sub, FiniteGroup):
            if any(compose(a, b) not in els for a in els for b in els):
                raise ValueError("not a subgroup")
        sig = self.gen_of
        if any(conjugate(a, y) not in els for a in sig for y in gens):
            return False
        if any(self.lam(a, y) not in els for a in sig for y in els):
            return False
        # implied by the two checks above; asserted directly on small sets
        if len(els) <= 256:
            if any(self.add(a, b) not in els for a in els for b in els):
                raise BraceVerificationError("normal lambda-invariant subgroup not closed under +")
        return True

    def ideals(self, bound: int = ISO_ORDER_BOUND) -> list[BraceIdeal]:
        out = []
        for els in subgroups(self.group, bound):
            if self.is_ideal(els):
                out.append(BraceIdeal(subgroup(self.group, els), True))
        return out

    def is_simple(self, bound: int = ISO_ORDER_BOUND) -> bool:
        if self.order == 1:
            return False
        return all(i.order in (1, self.order) for i in self.ideals(bound))

    def series(self) -> list[BraceIdeal]:
        """``G^(1) = G``, ``G^(m+1)`` the additive span of ``G^(m) * G``, until stable.

        ``a * b`` is additive in ``b``, so ``b`` ranges over the sigmas only.
        """
        cur = self.group.element_set()
        terms = [BraceIdeal(self.group, self.is_ideal(self.group))]
        gens = sorted(set(self.gen_of))
        while True:
            stars = {self.star(a, b) for a in sorted(cur) for b in gens}
            nxt = self.additive_span(sorted(stars))
            if nxt == cur:
                return terms
            if not nxt <= cur:
                raise BraceVerificationError("series is not descending")
            grp = subgroup(self.group, nxt)
            ideal = self.is_ideal(grp)
            if not ideal:
                raise BraceVerificationError("series term is not an ideal")
            terms.append(BraceIdeal(grp, ideal))
            cur = nxt

    # verification ----------------------------------------------------------

    def verify(self, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
               samples: int = SAMPLE_TRIPLES, seed: int = 0) -> None:
        """Check the brace laws; raises :class:`BraceVerificationError`."""
        els = self.group.elements
        e = self.identity
        sig = self.gen_of
        for u in els:
            for x in range(self.solution.n):
                word_sum = self._fold(e, self._decomp[u] + (u.images[x],))
                if word_sum != compose(u, sig[x]):
                    raise BraceVerificationError(f"decomposition depends on the word at {u}")
        if self.order <= exhaustive_limit:
            triples = itertools.product(els, repeat=3)
            pairs = itertools.product(els, repeat=2)
        else:
            rng = random.Random(seed)
            triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(samples))
            pairs = ((rng.choice(els), rng.choice(els)) for _ in range(samples))
        for u, v in pairs:
            if self.add(u, v) != self.add(v, u):
                raise BraceVerificationError(f"addition not commutative at {u}, {v}")
            if self.add(u, e) != u:
                raise BraceVerificationError("identity is not additively neutral")
            if self.add(u, self.neg(u)) != e:
                raise BraceVerificationError(f"bad additive inverse of {u}")
            if self.lam(u, v) != self.sub(compose(u, v), u):
                raise BraceVerificationError(f"lambda_u(v) != uv - u at {u}, {v}")
        for a, b, c in triples:
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                raise BraceVerificationError(f"addition not associative at {a}, {b}, {c}")
            lhs = self.add(compose(a, self.add(b, c)), a)
            rhs = self.add(compose(a, b), compose(a, c))
            if lhs != rhs:
                raise BraceVerificationError(f"brace axiom fails at {a}, {b}, {c}")
            if self.lam(compose(a, b), c) != self.lam(a, self.lam(b, c)):
                raise BraceVerificationError(f"lambda not multiplicative at {a}, {b}")


def build(s: Solution, limit: int | None = None, verify: bool = True) -> PermBrace:
    """Brace on the group generated by the sigmas; ``limit`` caps the group order."""
    b = PermBrace(s, closure(s.sigma, s.n, limit=limit))
    if verify:
        b.verify()
    return b


def lambda_act(b: PermBrace, u: Perm, v: Perm) -> Perm:
    return b.lam(u, v)


def additive_decomposition(b: PermBrace, u: Perm) -> tuple[int, ...]:
    zs = b.decompose(u)
    if b._fold(b.identity, zs) != u:
        raise BraceVerificationError(f"decomposition of {u} does not sum back")
    return zs


def add(b: PermBrace, u: Perm, v: Perm) -> Perm:
    return b.add(u, v)


def neg(b: PermBrace, u: Perm) -> Perm:
    return b.neg(u)


def star(b: PermBrace, u: Perm, v: Perm) -> Perm:
    return b.star(u, v)


def socle(b: PermBrace) -> BraceIdeal:
    return b.socle()


def is_ideal(b: PermBrace, sub) -> bool:
    return b.is_ideal(sub)


def is_simple(b: PermBrace) -> bool:
    return b.is_simple()


def series(b: PermBrace) -> list[BraceIdeal]:
    return b.series()
