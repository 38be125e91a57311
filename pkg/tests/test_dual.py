import pytest
from hypothesis import given, strategies as st

from tsirelson.dual import dual_ball_enumerate
from tsirelson.errors import CapExceeded
from tsirelson.family import FiniteRank, Schreier, Union, Explicit
from tsirelson.functional import Leaf, Node, eval_functional, validate_functional
from tsirelson.norm import norm_exact
from tsirelson.theta import Rational
from tsirelson.vector import SparseVector

HALF = Rational(1, 2)


def test_single_coordinate():
    assert set(dual_ball_enumerate(Schreier(), HALF, 1, 0)) == {Leaf(1, 1), Leaf(-1, 1)}


def test_schreier_two_coordinates_depth_one():
    got = set(dual_ball_enumerate(Schreier(), HALF, 2, 1))
    leaves = {Leaf(s, k) for s in (1, -1) for k in (1, 2)}
    # ({1}, {2}) is not Schreier admissible, so only one-child nodes appear
    assert got == leaves | {Node((l,)) for l in leaves}


@pytest.mark.parametrize("family", [FiniteRank(2), FiniteRank(3), Schreier(), Union(FiniteRank(1), Explicit(((2, 3, 4),)))])
def test_no_duplicates_and_all_valid(family):
    items = list(dual_ball_enumerate(family, HALF, 4, 3))
    assert len(items) == len(set(items))
    for f in items:
        assert validate_functional(family, HALF, f) <= 3
        assert f.hi <= 4


def test_levels_in_order():
    depths = [f.depth for f in dual_ball_enumerate(FiniteRank(2), HALF, 3, 3)]
    assert depths == sorted(depths)


def test_cap():
    with pytest.raises(CapExceeded):
        list(dual_ball_enumerate(FiniteRank(3), HALF, 4, 3, cap=100))


def test_empty_requests():
    assert list(dual_ball_enumerate(Schreier(), HALF, 0, 2)) == []


@pytest.fixture(scope="module")
def balls():
    return {f: set(dual_ball_enumerate(f, HALF, 4, 3)) for f in (FiniteRank(2), FiniteRank(3), Schreier())}


coef = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@given(st.sampled_from([FiniteRank(2), FiniteRank(3), Schreier()]),
       st.dictionaries(st.integers(1, 4), coef, min_size=1, max_size=4))
def test_sup_over_ball_is_the_norm(balls, family, entries):
    x = SparseVector(entries)
    best = max(eval_functional(f, x, HALF.value) for f in balls[family])
    res = norm_exact(family, HALF, x)
    assert best == res.value
    if x:
        assert res.certificate in balls[family]
