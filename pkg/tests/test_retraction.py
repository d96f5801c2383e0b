import pytest

from ybx.perm import Perm
from ybx.retraction import MpVerdict, is_irretractable, mp_level, retract, tower
from ybx.solution import (
    canonical_form,
    enumerate_solutions,
    flip_solution,
    permutation_solution,
    validate,
)


def test_permutation_solution_collapses():
    s = permutation_solution(Perm([1, 2, 3, 0]))
    step = retract(s)
    assert step.classes == ((0, 1, 2, 3),)
    assert step.induced.n == 1
    assert mp_level(s) == MpVerdict(1, (4, 1))


def test_flip():
    assert retract(flip_solution(5)).induced.n == 1
    assert mp_level(flip_solution(3)).level == 1
    assert not is_irretractable(flip_solution(2))


def test_singleton_is_level_zero():
    v = mp_level(flip_solution(1))
    assert v.level == 0 and v.tower == (1,)
    assert tower(flip_solution(1)) == []


def test_irretractable_examples(examples):
    for s in examples.values():
        assert is_irretractable(s)
        step = retract(s)
        assert len(step.classes) == s.n
        assert step.induced.sigma == s.sigma
        assert step.induced.points == s.points


def test_sixteen_point_tower(ex3, ex4):
    assert mp_level(ex3) == MpVerdict(None, (16, 16))
    assert mp_level(ex4) == MpVerdict(None, (24, 24))
    assert not mp_level(ex4).is_multipermutation


def test_n2_both_retractable():
    sols = enumerate_solutions(2)
    assert [is_irretractable(s) for s in sols] == [False, False]
    assert [mp_level(s).level for s in sols] == [1, 1]


def test_class_labels_are_minimal_labels():
    for s in enumerate_solutions(4):
        step = retract(s)
        assert step.induced.points.labels == tuple(s.points.label(c[0]) for c in step.classes)
        for c in step.classes:
            assert c == tuple(sorted(c))
            assert len({s.sigma[x] for x in c}) == 1


def test_corpus_invariants(corpus):
    for s in corpus:
        if s.n == 1:
            continue
        step = retract(s)
        assert step.induced.n <= s.n
        assert (step.induced.n == s.n) == is_irretractable(s)
        assert validate(step.induced.rtable).ok
        for x in range(s.n):
            for y in range(s.n):
                same = s.sigma[x] == s.sigma[y]
                assert same == (step.class_of[x] == step.class_of[y])
        v = mp_level(s)
        if v.level is not None and v.level >= 1:
            assert mp_level(step.induced).level == v.level - 1
        if is_irretractable(s):
            assert canonical_form(step.induced.sigma_key()) == canonical_form(s.sigma_key())


def test_tower_sizes_strictly_decrease(corpus):
    for s in corpus:
        t = mp_level(s).tower
        if mp_level(s).is_multipermutation:
            assert list(t) == sorted(set(t), reverse=True)
            assert t[-1] == 1
        else:
            assert t[-1] == t[-2] > 1


def test_level_three_exists():
    levels = {mp_level(s).level for s in enumerate_solutions(4, dedup=True)}
    assert levels == {1, 2, 3, None}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_level_at_most_n_minus_one(n):
    for s in enumerate_solutions(n):
        v = mp_level(s)
        assert v.level is None or v.level <= n - 1
