import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from homlie import catalog
from homlie.exactlin import QQ, Matrix

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=4))
nonzero_rationals = rationals.filter(lambda x: x != 0)


def vectors(n):
    return st.lists(rationals, min_size=n, max_size=n).map(tuple)


def matrices(n, m=None):
    m = n if m is None else m
    return st.lists(st.lists(rationals, min_size=m, max_size=m), min_size=n, max_size=n).map(
        lambda rows: Matrix.of(QQ, rows))


def invertible_matrices(n):
    return matrices(n).filter(lambda a: a.det() != 0)


def lower_unipotent(n):
    """Lower triangular with nonzero diagonal."""
    return st.tuples(st.lists(nonzero_rationals, min_size=n, max_size=n),
                     st.lists(rationals, min_size=n * n, max_size=n * n)).map(
        lambda t: Matrix.of(QQ, [[t[0][i] if i == j else (t[1][i * n + j] if j < i else 0)
                                  for j in range(n)] for i in range(n)]))


def random_lower(n, rng, F=QQ):
    return Matrix.of(F, [[F.random(rng, 3, nonzero=True) if i == j else (F.random(rng, 3) if j < i else 0)
                          for j in range(n)] for i in range(n)])


@pytest.fixture(scope="session")
def cat():
    return catalog.all_algebras()


@pytest.fixture
def rng():
    return random.Random(12345)
