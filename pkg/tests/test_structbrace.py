import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ybx.perm import Perm, closure, compose, inverse
from ybx.permbrace import build
from ybx.retraction import mp_level
from ybx.solution import diagonal_map, flip_solution, permutation_solution
from ybx.structbrace import (
    CrossCheckError,
    StructureBrace,
    basis,
    hnf,
    in_socle,
    inv,
    lambda_vec,
    lattice_member,
    mp_verdict,
    mul,
    norm1,
    pi_cross_check,
    series_lattices,
    vadd,
    vneg,
    vsub,
    zero,
)


def test_lambda_base_cases(ex2):
    n = ex2.n
    assert lambda_vec(ex2, zero(n)).is_identity()
    for y in range(n):
        assert lambda_vec(ex2, basis(n, y)) == ex2.sigma[y]


def test_lambda_negative_basis(ex2):
    sb = StructureBrace(ex2)
    t = diagonal_map(ex2)
    for x in range(ex2.n):
        assert sb.lam(basis(ex2.n, t(x), -1)) == inverse(ex2.sigma[x])


def test_lambda_of_cancelling_pair(ex4):
    sb = StructureBrace(ex4)
    n = ex4.n
    for y in range(n):
        v = vadd(basis(n, y), basis(n, y, -1))
        assert sb.lam(v).is_identity()
        # peel +y first, then -y, and the other way round, by hand
        p = ex4.sigma[y]
        w = [0] * n
        w[y] = -1
        rest = tuple(w[p(i)] for i in range(n))
        assert compose(p, sb.lam(rest)).is_identity()


def test_lambda_of_orbit_differences_matches_brace(ex2):
    # lambda_{y - x} must be the permutation-brace element sigma_y - sigma_x
    sb = StructureBrace(ex2)
    b = build(ex2)
    n = ex2.n
    for orb in ([1, 4], [2, 3, 6, 7, 10, 11, 14, 15], [8, 9, 12, 13]):
        for x, y in itertools.permutations(orb, 2):
            v = vsub(basis(n, y), basis(n, x))
            assert sb.lam(v) == b.add(ex2.sigma[y], b.neg(ex2.sigma[x]))


def test_lambda_agrees_with_brace_on_random_vectors(ex3, rng):
    sb = StructureBrace(ex3)
    b = build(ex3)
    n = ex3.n
    for _ in range(50):
        v = tuple(rng.randint(-2, 2) for _ in range(n))
        acc = b.identity
        for i, a in enumerate(v):
            term = ex3.sigma[i] if a > 0 else b.neg(ex3.sigma[i])
            for _ in range(abs(a)):
                acc = b.add(acc, term)
        assert sb.lam(v) == acc


def test_mul_basics(ex2):
    n = ex2.n
    v = tuple(range(n))
    assert mul(ex2, v, zero(n)) == v
    assert mul(ex2, zero(n), v) == v
    for x, y in itertools.product(range(n), repeat=2):
        assert mul(ex2, basis(n, x), basis(n, y)) == vadd(basis(n, x), basis(n, ex2.sigma[x](y)))


def test_inverse_of_generator(examples):
    for s in examples.values():
        n = s.n
        t = diagonal_map(s)
        for x in range(n):
            assert inv(s, basis(n, x)) == basis(n, t(x), -1)
            assert not any(mul(s, basis(n, x), basis(n, t(x), -1)))


def test_socle_membership(ex2):
    n = ex2.n
    assert in_socle(ex2, zero(n))
    order = closure(ex2.sigma).order
    for x in range(n):
        if not ex2.sigma[x].is_identity():
            assert not in_socle(ex2, basis(n, x))
        assert in_socle(ex2, tuple(order * a for a in basis(n, x)))


def test_socle_elements_multiply_additively(ex3, rng):
    sb = StructureBrace(ex3)
    n = ex3.n
    order = 16
    soc = [tuple(order * a for a in basis(n, x)) for x in range(n)]
    for _ in range(30):
        v, w = rng.choice(soc), rng.choice(soc)
        assert sb.mul(v, w) == vadd(v, w)


def _vectors(n, max_norm):
    """Sums of at most ``max_norm`` signed unit vectors."""
    def total(steps):
        v = [0] * n
        for i, sign in steps:
            v[i] += sign
        return tuple(v)

    unit = st.tuples(st.integers(0, n - 1), st.sampled_from((1, -1)))
    return st.lists(unit, max_size=max_norm).map(total)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lambda_is_multiplicative(ex4, data):
    sb = StructureBrace(ex4)
    v = data.draw(_vectors(24, 10))
    w = data.draw(_vectors(24, 10))
    assert sb.lam(sb.mul(v, w)) == compose(sb.lam(v), sb.lam(w))
    assert sb.lam(v) in closure(ex4.sigma)


def test_peeling_order_independent(corpus, rng):
    for s in corpus[::7]:
        sb = StructureBrace(s)
        for _ in range(20):
            v = tuple(rng.randint(-3, 3) for _ in range(s.n))
            want = sb.lam(v)
            for k in range(8):
                assert sb.lam(v, random.Random(k)) == want


def test_hnf_basics():
    empty = hnf([], 3)
    assert empty.rank == 0 and lattice_member(empty, (0, 0, 0))
    assert not lattice_member(empty, (1, 0, 0))
    assert hnf([(2, 0), (3, 0)]).basis == ((1, 0),)
    lat = hnf([(4, 6), (0, 4)])
    assert lat.basis == ((4, 2), (0, 4))
    for row, col in zip(lat.basis, lat.pivots):
        assert row[col] > 0
        for other in lat.basis:
            if other is not row:
                assert 0 <= other[col] < row[col] or other[col] == 0


def test_hnf_is_canonical(rng):
    for _ in range(50):
        rows = [tuple(rng.randint(-5, 5) for _ in range(4)) for _ in range(3)]
        a = hnf(rows, 4)
        mixed = [vadd(rows[0], rows[1]), rows[1], vsub(rows[2], vadd(rows[0], rows[0]))]
        assert hnf(mixed, 4) == a
        assert hnf(list(a.basis), 4) == a


def _small_span_contains(gens, target, bound=2):
    n = len(target)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        v = [0] * n
        for c, g in zip(coeffs, gens):
            for i in range(n):
                v[i] += c * g[i]
        if tuple(v) == tuple(target):
            return True
    return False


def test_hnf_orbit_lattice_membership():
    n = 4
    gens = [vsub(basis(n, y), basis(n, x)) for x, y in itertools.permutations(range(4), 2)]
    lat = hnf(gens, n)
    assert lat.rank == 3
    target = (1, -1, 1, -1)
    assert _small_span_contains([gens[0], gens[1], gens[2]], target)
    assert lattice_member(lat, target)
    assert not lattice_member(lat, (1, 1, 0, 0))
    assert not lattice_member(lat, (1, 0, 0, 0))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-6, 6)] * 3), max_size=4),
       st.tuples(*[st.integers(-2, 2)] * 4))
def test_lattice_membership_of_combinations(rows, coeffs):
    lat = hnf(rows, 3)
    v = [0, 0, 0]
    for c, r in zip(coeffs, rows):
        for i in range(3):
            v[i] += c * r[i]
    assert lattice_member(lat, tuple(v))


def test_series_flip():
    r = series_lattices(flip_solution(3))
    assert r.perm_orders == [1]
    assert r.multipermutation
    assert r.lattice_ranks == [0]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_series_cyclic_permutation_solution(n):
    s = permutation_solution(Perm(list(range(1, n)) + [0]))
    r = series_lattices(s)
    assert r.perm_orders[0] == n
    assert r.orbit_history[0] == [tuple(range(n))]
    assert r.lattice_ranks[0] == n - 1
    sum_zero = hnf([vsub(basis(n, i), basis(n, 0)) for i in range(1, n)], n)
    assert r.lattices[0] == sum_zero
    assert r.multipermutation == mp_level(s).is_multipermutation
    assert mp_verdict(s).level == mp_level(s).level == 1


def test_series_examples(examples):
    for s in examples.values():
        r = series_lattices(s)
        assert not r.multipermutation
        assert r.perm_images[-1].order > 1
        assert pi_cross_check(s, r)
        assert not mp_verdict(s, r).multipermutation


def test_series_chain_properties(corpus):
    for s in corpus:
        r = series_lattices(s)
        for a, b in zip(r.perm_images, r.perm_images[1:]):
            assert b.element_set() < a.element_set()
        for coarse, fine in zip(r.orbit_history, r.orbit_history[1:]):
            for orb in fine:
                assert any(set(orb) <= set(c) for c in coarse)
        assert r.stabilization_index <= r.perm_images[0].order


def test_lattice_generators_lie_in_previous_term(examples):
    for s in examples.values():
        r = series_lattices(s)
        for big, small in zip(r.lattices, r.lattices[1:]):
            assert all(lattice_member(big, row) for row in small.basis)


def test_pi_cross_check_and_verdicts(corpus):
    for s in corpus:
        assert pi_cross_check(s)
        v = mp_verdict(s)
        assert v.level == mp_level(s).level


def test_verdict_disagreement_is_fatal(ex2, monkeypatch):
    r = series_lattices(ex2)
    r.multipermutation = True
    with pytest.raises(CrossCheckError):
        mp_verdict(ex2, r)


def test_norm_and_negation():
    v = (3, -2, 0, 1)
    assert norm1(v) == 6
    assert vadd(v, vneg(v)) == zero(4)
