"""Permutations of a finite labeled point set and small finite-group algorithms.

Points are 0-based indices internally; labels only matter for parsing and
printing. Groups are stored as explicit element sets, which is fine at the
sizes this package deals with (a few thousand elements at most).
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Sequence

DEFAULT_ALPHABET = (
    "123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
)
_RESERVED = set("(),:#= \t\r\n")

ISO_ORDER_BOUND = 100


class CycleSyntaxError(ValueError):
    pass


class RepeatedLabelError(CycleSyntaxError):
    def __init__(self, label: str):
        super().__init__(f"label {label!r} repeated")
        self.label = label


class GroupTooLarge(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"group order exceeds limit {limit}")
        self.limit = limit


@dataclass(frozen=True)
class PointSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a point set needs at least one label")
        for lab in self.labels:
            if len(lab) != 1 or lab in _RESERVED:
                raise ValueError(f"bad label {lab!r}")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def standard(cls, n: int) -> PointSet:
        """The first ``n`` labels of ``1..9a..zA..Z``."""
        if not 1 <= n <= len(DEFAULT_ALPHABET):
            raise ValueError(f"no standard labels for n={n}")
        return cls(tuple(DEFAULT_ALPHABET[:n]))

    @classmethod
    def from_string(cls, labels: str) -> PointSet:
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def __str__(self) -> str:
        return "".join(self.labels)


class Perm:
    """A bijection of ``{0, ..., n-1}`` given by its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Perm:
        img = list(range(n))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def inverse(self) -> Perm:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, sorted."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply ``q`` first, then ``p``."""
    if len(p.images) != len(q.images):
        raise ValueError("permutations act on different point sets")
    pi = p.images
    return Perm._raw(tuple(pi[j] for j in q.images))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p.images)
    for i, j in enumerate(p.images):
        inv[j] = i
    return Perm._raw(tuple(inv))


def act(p: Perm, i: int) -> int:
    return p.images[i]


def conjugate(g: Perm, p: Perm) -> Perm:
    """``g p g^-1``."""
    return compose(compose(g, p), inverse(g))


_TOKEN = re.compile(r"\s+|[(),]|[^(),\s]")


def parse_cycles(text: str, points: PointSet) -> Perm:
    """Parse a product of disjoint cycles such as ``"(25)(3b4f)"``.

    Whitespace and commas inside cycles are ignored; ``""`` and ``"()"`` are
    the identity.
    """
    n = len(points)
    img = list(range(n))
    used: set[int] = set()
    current: list[int] | None = None
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok.isspace():
            continue
        if tok == "(":
            if current is not None:
                raise CycleSyntaxError(f"nested '(' at column {m.start() + 1}")
            current = []
        elif tok == ")":
            if current is None:
                raise CycleSyntaxError(f"unmatched ')' at column {m.start() + 1}")
            for a, b in zip(current, current[1:] + current[:1]):
                img[a] = b
            current = None
        elif tok == ",":
            if current is None:
                raise CycleSyntaxError(f"',' outside a cycle at column {m.start() + 1}")
        else:
            if current is None:
                raise CycleSyntaxError(f"label {tok!r} outside a cycle at column {m.start() + 1}")
            try:
                i = points.index(tok)
            except KeyError:
                raise CycleSyntaxError(f"unknown label {tok!r}") from None
            if i in used:
                raise RepeatedLabelError(tok)
            used.add(i)
            current.append(i)
    if current is not None:
        raise CycleSyntaxError("unclosed '('")
    return Perm._raw(tuple(img))


def format_cycles(p: Perm, points: PointSet) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + "".join(points.label(i) for i in c) + ")" for c in cyc)


class FiniteGroup:
    """A permutation group stored as its full element set.

    ``words[g]`` is a shortest word in generator indices with
    ``g = gens[w0] o gens[w1] o ...``; it comes from the breadth-first
    closure and is what the brace code uses to decompose elements.
    """

    def __init__(self, generators: Sequence[Perm], elements: Sequence[Perm],
                 words: dict[Perm, tuple[int, ...]], degree: int):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.words = words
        self.degree = degree
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._table: list[list[int]] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return p in self._index

    def index(self, p: Perm) -> int:
        return self._index[p]

    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def order_statistics(self) -> Counter:
        return Counter(g.order() for g in self.elements)

    def table(self) -> list[list[int]]:
        """Multiplication table on element indices (built on first use)."""
        if self._table is None:
            idx = self._index
            els = self.elements
            self._table = [[idx[compose(a, b)] for b in els] for a in els]
        return self._table

    def small_generating_set(self) -> list[Perm]:
        """Greedy irredundant subset of the generators, highest order first."""
        cands = sorted(set(self.generators), key=lambda g: (-g.order(), g.images))
        kept: list[Perm] = []
        span: frozenset[Perm] = frozenset([self.identity])
        for g in cands:
            if g in span:
                continue
            kept.append(g)
            span = closure(kept, self.degree).element_set()
            if len(span) == self.order:
                break
        return kept

    def __repr__(self):
        return f"<FiniteGroup order={self.order} degree={self.degree}>"


def closure(gens: Sequence[Perm], degree: int | None = None,
            limit: int | None = None) -> FiniteGroup:
    """Breadth-first closure of ``gens`` under composition."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generators act on different point sets")
    e = Perm.identity(degree)
    words: dict[Perm, tuple[int, ...]] = {e: ()}
    elements = [e]
    queue = deque([e])
    while queue:
        u = queue.popleft()
        wu = words[u]
        for k, g in enumerate(gens):
            v = compose(u, g)
            if v not in words:
                words[v] = wu + (k,)
                elements.append(v)
                if limit is not None and len(elements) > limit:
                    raise GroupTooLarge(limit)
                queue.append(v)
    return FiniteGroup(gens, elements, words, degree)


def subgroup(g: FiniteGroup, elements: Iterable[Perm]) -> FiniteGroup:
    """The subgroup of ``g`` generated by ``elements``."""
    elements = list(elements)
    for x in elements:
        if x not in g:
            raise ValueError("element not in the ambient group")
    return closure(elements, g.degree)


def orbits(gens: Sequence[Perm], points: PointSet | int) -> list[tuple[int, ...]]:
    """Orbits of the generated group, each sorted, listed by smallest point."""
    n = points if isinstance(points, int) else len(points)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for g in gens:
                j = g.images[i]
                if not seen[j]:
                    seen[j] = True
                    orb.append(j)
                    queue.append(j)
        out.append(tuple(sorted(orb)))
    return out


def is_normal(sub: FiniteGroup, g: FiniteGroup) -> bool:
    for x in sub.generators:
        if x not in g:
            raise ValueError("subgroup not contained in the group")
    return all(conjugate(a, x) in sub for a in g.generators for x in sub.generators)


def index2_subgroups(g: FiniteGroup) -> list[FiniteGroup]:
    """All subgroups of index two, as kernels of maps onto the group of order 2."""
    if g.order % 2:
        return []
    gens = g.small_generating_set()
    seen = set()
    out = []
    for signs in itertools.product((0, 1), repeat=len(gens)):
        if not any(signs):
            continue
        parity = _extend_to_hom(gens, signs, g)
        if parity is None:
            continue
        kernel = frozenset(x for x, s in parity.items() if s == 0)
        if kernel in seen:
            continue
        seen.add(kernel)
        out.append(subgroup(g, kernel))
    out.sort(key=lambda h: sorted(p.images for p in h.elements))
    return out


def _extend_to_hom(gens, signs, g):
    parity = {g.identity: 0}
    queue = deque([g.identity])
    while queue:
        u = queue.popleft()
        for x, s in zip(gens, signs):
            v = compose(u, x)
            pv = parity[u] ^ s
            if v in parity:
                if parity[v] != pv:
                    return None
            else:
                parity[v] = pv
                queue.append(v)
    return parity


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, bound: int = ISO_ORDER_BOUND) -> bool:
    """Backtracking search for an isomorphism on a small generating set of ``g``."""
    if g.order > bound or h.order > bound:
        raise GroupTooLarge(bound)
    if g.order != h.order:
        return False
    if g.order_statistics() != h.order_statistics():
        return False
    if g.is_abelian() != h.is_abelian():
        return False
    gens = g.small_generating_set()
    by_order: dict[int, list[Perm]] = {}
    for y in h.elements:
        by_order.setdefault(y.order(), []).append(y)
    cands = [by_order.get(x.order(), []) for x in gens]

    def extend(images: list[Perm]) -> dict[Perm, Perm] | None:
        k = len(images)
        phi = {g.identity: h.identity}
        used = {h.identity}
        queue = deque([g.identity])
        while queue:
            u = queue.popleft()
            for x, y in zip(gens[:k], images):
                v = compose(u, x)
                w = compose(phi[u], y)
                if v in phi:
                    if phi[v] != w:
                        return None
                else:
                    if w in used:
                        return None
                    phi[v] = w
                    used.add(w)
                    queue.append(v)
        return phi

    def search(images: list[Perm]) -> bool:
        if len(images) == len(gens):
            return True
        for y in cands[len(images)]:
            trial = images + [y]
            if extend(trial) is not None and search(trial):
                return True
        return False

    return search([])


# named groups ---------------------------------------------------------------

_NAME = re.compile(r"^(?:(?P<z>Z/|C)(?P<zn>\d+)|D(?P<dn>\d+)|(?:Sym|S)(?P<sn>\d+)|(?P<one>1))$")


def _cyclic_gens(n):
    return [[tuple(range(n))]] if n > 1 else [], max(n, 1)


def _dihedral_gens(order):
    if order % 2 or order < 2:
        raise ValueError(f"dihedral group needs even order, got {order}")
    k = order // 2
    if k == 1:
        return _cyclic_gens(2)
    if k == 2:
        return [[(0, 1), (2, 3)], [(0, 2), (1, 3)]], 4
    rot = [tuple(range(k))]
    refl = [(i, k - i) for i in range(1, (k + 1) // 2)]
    return [rot, refl], k


def _symmetric_gens(n):
    if n <= 1:
        return [], 1
    if n == 2:
        return [[(0, 1)]], 2
    return [[(0, 1)], [tuple(range(n))]], n


def _factor_gens(token: str):
    m = _NAME.match(token.strip())
    if not m:
        raise ValueError(f"unsupported group name {token!r}")
    if m.group("one"):
        return [], 1
    if m.group("zn"):
        return _cyclic_gens(int(m.group("zn")))
    if m.group("dn"):
        return _dihedral_gens(int(m.group("dn")))
    return _symmetric_gens(int(m.group("sn")))


def named_group(name: str, bound: int | None = None) -> FiniteGroup:
    """Concrete permutation group for names like ``"Z/2 x D8"`` or ``"Sym4"``.

    Factors are ``Z/n`` (or ``Cn``), ``D<order>``, ``Sym<n>`` (or ``Sn``) and
    ``1``, joined by ``x``; products act on disjoint point sets.
    """
    factors = [f for f in re.split(r"\s*[x×]\s*", name.strip()) if f]
    if not factors:
        raise ValueError("empty group name")
    gens = []
    offset = 0
    pieces = [_factor_gens(f) for f in factors]
    degree = sum(d for _, d in pieces)
    for cyc_lists, d in pieces:
        for cycles in cyc_lists:
            shifted = [tuple(i + offset for i in c) for c in cycles]
            gens.append(Perm.from_cycles(shifted, degree))
        offset += d
    gens = [p for p in gens if not p.is_identity()]
    return closure(gens, degree, limit=bound)


def _catalog_primitives(max_order):
    prims = [(f"Z/{k}", k) for k in range(2, max_order + 1)]
    prims += [(f"D{2 * k}", 2 * k) for k in range(3, max_order // 2 + 1)]
    prims += [("Sym4", 24)]
    return prims


def catalog_names(order: int, max_factors: int = 3) -> list[str]:
    """Candidate names of the given order, fewest factors first."""
    if order == 1:
        return ["1"]
    prims = [p for p in _catalog_primitives(order) if order % p[1] == 0]
    out = []
    for r in range(1, max_factors + 1):
        for combo in itertools.combinations_with_replacement(prims, r):
            prod = 1
            for _, o in combo:
                prod *= o
            if prod == order:
                out.append(" x ".join(name for name, _ in combo))
    return out


def identify(g: FiniteGroup, bound: int = ISO_ORDER_BOUND) -> str | None:
    """Name of the first catalog group isomorphic to ``g``, or None."""
    if g.order > bound:
        raise GroupTooLarge(bound)
    for name in catalog_names(g.order):
        if is_isomorphic(g, named_group(name), bound):
            return name
    return None


def subgroups(g: FiniteGroup, bound: int = ISO_ORDER_BOUND) -> list[frozenset[Perm]]:
    """Every subgroup of ``g`` as an element set, by cyclic extension.

    Starts from the cyclic subgroups and repeatedly joins each new subgroup
    with a cyclic one not already inside it.
    """
    if g.order > bound:
        raise GroupTooLarge(bound)
    tab = g.table()
    els = g.elements

    def span(gen_idx):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                row = tab[a]
                for b in gen_idx:
                    c = row[b]
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    cyclic = {}
    for i in range(len(els)):
        c = span([i])
        cyclic.setdefault(c, i)
    found = {frozenset([0]): ()}
    for c, i in cyclic.items():
        found.setdefault(c, (i,))
    frontier = [c for c in found if len(c) > 1]
    while frontier:
        nxt = []
        for h in frontier:
            gens_h = found[h]
            for c, i in cyclic.items():
                if c <= h:
                    continue
                j = span(gens_h + (i,))
                if j not in found:
                    found[j] = gens_h + (i,)
                    nxt.append(j)
        frontier = nxt
    out = [frozenset(els[i] for i in h) for h in found]
    out.sort(key=lambda s: (len(s), sorted(p.images for p in s)))
    return out
