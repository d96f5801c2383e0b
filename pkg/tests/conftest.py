import itertools
import random

import pytest

from ybx.fileformat import load_example
from ybx.perm import PointSet, parse_cycles
from ybx.solution import enumerate_solutions, from_sigma_table


def solution_from_table(table):
    pts = PointSet.from_string("".join(table))
    return from_sigma_table(pts, [parse_cycles(table[lab], pts) for lab in pts.labels])


def naive_braid(r, n):
    """Braid relation by composing maps on explicit triples."""
    def r12(t):
        return r(t[0], t[1]) + (t[2],)

    def r23(t):
        return (t[0],) + r(t[1], t[2])

    return all(r12(r23(r12(t))) == r23(r12(r23(t)))
               for t in itertools.product(range(n), repeat=3))


@pytest.fixture(scope="session")
def ex2():
    return load_example("paper-16-91")


@pytest.fixture(scope="session")
def ex3():
    return load_example("paper-16-318")


@pytest.fixture(scope="session")
def ex4():
    return load_example("paper-24-96")


@pytest.fixture(scope="session")
def examples(ex2, ex3, ex4):
    return {"16-91": ex2, "16-318": ex3, "24-96": ex4}


@pytest.fixture(scope="session")
def corpus():
    return [s for n in range(1, 5) for s in enumerate_solutions(n)]


@pytest.fixture
def rng():
    return random.Random(20240611)
