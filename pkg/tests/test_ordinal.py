import pytest
from hypothesis import given, strategies as st

from tsirelson.ordinal import OrdinalRank, ordinal_max

W = OrdinalRank.omega


@st.composite
def ordinals(draw):
    exps = sorted(draw(st.sets(st.integers(0, 3), max_size=3)), reverse=True)
    return OrdinalRank(tuple((e, draw(st.integers(1, 4))) for e in exps))


def test_finite_and_omega():
    assert int(OrdinalRank.finite(5)) == 5
    assert OrdinalRank.finite(0) == OrdinalRank()
    assert str(W()) == "ω"
    assert str(OrdinalRank(((2, 3), (0, 5)))) == "ω^2·3 + 5"
    assert str(OrdinalRank()) == "0"
    with pytest.raises(ValueError):
        int(W())


def test_ordering():
    assert OrdinalRank.finite(10**6) < W()
    assert W() < W().succ()
    assert W().succ() < OrdinalRank(((1, 2),))
    assert OrdinalRank(((1, 2),)) < W(2)
    assert ordinal_max(OrdinalRank.finite(3), W(), OrdinalRank.finite(9)) == W()
    assert ordinal_max() == OrdinalRank()


def test_addition_absorbs():
    assert OrdinalRank.finite(3) + W() == W()
    assert W() + OrdinalRank.finite(3) == OrdinalRank(((1, 1), (0, 3)))
    assert W() + W() == OrdinalRank(((1, 2),))
    assert OrdinalRank.finite(2) + OrdinalRank.finite(3) == OrdinalRank.finite(5)


@pytest.mark.parametrize("terms", [((0, 0),), ((1, 1), (2, 1)), ((-1, 1),)])
def test_rejects_bad_terms(terms):
    with pytest.raises(ValueError):
        OrdinalRank(terms)


@given(ordinals(), ordinals(), ordinals())
def test_addition_associative_and_monotone(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a <= a + b
    assert b <= a + b
    assert a < a.succ()


@given(st.integers(0, 50), st.integers(0, 50))
def test_finite_matches_int(a, b):
    oa, ob = OrdinalRank.finite(a), OrdinalRank.finite(b)
    assert (oa < ob) == (a < b)
    assert int(oa + ob) == a + b
