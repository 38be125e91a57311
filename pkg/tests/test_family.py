from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from tsirelson.errors import CapExceeded, InvalidBlocks, ParseError
from tsirelson.family import (
    Explicit,
    FiniteRank,
    Schreier,
    SuccessiveBlocks,
    Union,
    contains,
    finite_set,
    format_family,
    is_admissible,
    parse_family,
    rank,
    truncate,
)
from tsirelson.ordinal import OrdinalRank


def interleaves(witness, blocks):
    """Independent restatement of the admissibility inequalities."""
    if len(witness) != len(blocks):
        return False
    prev_max = 0
    for m, b in zip(witness, blocks):
        if not (prev_max < m <= min(b)):
            return False
        prev_max = max(b)
    return True


@st.composite
def successive_blocks(draw, max_blocks=8, max_gap=6, max_width=5, max_start=12):
    d = draw(st.integers(1, max_blocks))
    pos = draw(st.integers(1, max_start))
    blocks = []
    for _ in range(d):
        width = draw(st.integers(1, max_width))
        body = sorted(draw(st.sets(st.integers(pos, pos + width - 1), min_size=1, max_size=width)))
        blocks.append(tuple(body))
        pos = body[-1] + 1 + draw(st.integers(0, max_gap))
    return blocks


@pytest.mark.parametrize(
    "family, a, expected",
    [
        (FiniteRank(3), (2, 5, 9), True),
        (Schreier(), (2, 5, 9), False),
        (Schreier(), (3, 5, 9), True),
        (FiniteRank(3), (), True),
        (Schreier(), (), True),
        (FiniteRank(2), (1, 2, 3), False),
        (Explicit(((1, 2),)), (1, 2), True),
        (Explicit(((1, 2),)), (1,), False),
        (Union(FiniteRank(1), Explicit(((4, 6, 9),))), (4, 6, 9), True),
        (Union(FiniteRank(1), Explicit(((4, 6, 9),))), (4, 6), False),
    ],
)
def test_contains(family, a, expected):
    assert contains(family, a) is expected


def test_finite_set_validation():
    assert finite_set([1, 4, 7]) == (1, 4, 7)
    with pytest.raises(ValueError):
        finite_set([3, 2])
    with pytest.raises(ValueError):
        finite_set([0, 2])
    with pytest.raises(ValueError):
        finite_set([10**6 + 1])


def test_explicit_rejects_duplicates():
    with pytest.raises(ValueError):
        Explicit(((1, 2), (1, 2)))


def test_admissible_examples():
    assert is_admissible(Schreier(), [[2], [3]]) == (2, 3)
    assert is_admissible(Schreier(), [[1], [2]]) is None
    w = is_admissible(FiniteRank(2), [[7], [11, 13]])
    assert w is not None and interleaves(w, [[7], [11, 13]])


def test_admissible_schreier_exhaustive_small():
    # m_1 in {1, 2}, m_2 = 3; only {2, 3} is a Schreier set
    blocks = [[2], [3]]
    found = [
        (m1, m2)
        for m1 in (1, 2)
        for m2 in (3,)
        if contains(Schreier(), (m1, m2)) and interleaves((m1, m2), blocks)
    ]
    assert found == [(2, 3)]


@pytest.mark.parametrize("bad", [[[2], [2]], [[3], [1]], [[1], []], []])
def test_admissible_rejects_malformed(bad):
    with pytest.raises(InvalidBlocks):
        is_admissible(Schreier(), bad)


def test_successive_blocks_bounds():
    sb = SuccessiveBlocks(((1, 3), (5,), (8, 9)))
    assert sb.bounds == ((1, 3), (5, 5), (8, 9))
    assert len(sb) == 3


def test_explicit_admissibility_is_exact_size():
    fam = Explicit(((1, 3, 5),))
    assert is_admissible(fam, [[1], [3], [5]]) == (1, 3, 5)
    # hereditary closure is not applied: two blocks need a two-element member
    assert is_admissible(fam, [[1], [3]]) is None
    assert is_admissible(fam, [[1, 2], [4], [6, 9]]) == (1, 3, 5)
    assert is_admissible(fam, [[1], [2], [5]]) is None


def test_union_admissible_either_side():
    fam = Union(FiniteRank(1), Explicit(((2, 5),)))
    assert is_admissible(fam, [[3], [6]]) == (2, 5)
    assert is_admissible(fam, [[3], [4]]) is None
    assert is_admissible(fam, [[3, 4]]) == (3,)


@given(successive_blocks(), st.integers(1, 6))
def test_finite_rank_closed_form(blocks, n):
    w = is_admissible(FiniteRank(n), blocks)
    assert (w is not None) == (len(blocks) <= n)
    if w is not None:
        assert contains(FiniteRank(n), w) and interleaves(w, blocks)


@given(successive_blocks())
def test_schreier_closed_form(blocks):
    w = is_admissible(Schreier(), blocks)
    assert (w is not None) == (len(blocks) <= min(blocks[0]))
    if w is not None:
        assert contains(Schreier(), w) and interleaves(w, blocks)


@given(successive_blocks(max_start=6), st.data())
def test_explicit_witness_matches_brute_force(blocks, data):
    universe = range(1, max(blocks[-1]) + 1)
    members = data.draw(
        st.lists(st.lists(st.sampled_from(list(universe)), min_size=1, max_size=4, unique=True).map(sorted),
                 max_size=6, unique_by=tuple)
    )
    fam = Explicit(tuple(tuple(m) for m in members))
    w = is_admissible(fam, blocks)
    expected = any(interleaves(tuple(m), blocks) for m in members)
    assert (w is not None) == expected
    if w is not None:
        assert contains(fam, w) and interleaves(w, blocks)


@given(successive_blocks(max_blocks=4), st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_spreading(blocks, shifts):
    shifted, offset = [], 0
    for b, s in zip(blocks, shifts):
        offset += s
        shifted.append([e + offset for e in b])
    for fam in (FiniteRank(3), Schreier()):
        if is_admissible(fam, blocks) is not None:
            assert is_admissible(fam, shifted) is not None


@given(st.sets(st.integers(1, 30), max_size=8), st.data())
def test_hereditary(a, data):
    a = tuple(sorted(a))
    for fam in (Schreier(), FiniteRank(4)):
        assume(contains(fam, a))
        b = tuple(sorted(data.draw(st.sets(st.sampled_from(a)) if a else st.just(set()))))
        assert contains(fam, b)


def test_rank_examples():
    assert rank(FiniteRank(3)) == OrdinalRank.finite(3)
    assert rank(Schreier()) == OrdinalRank.omega()
    assert rank(Explicit(((),))) == OrdinalRank.finite(0)
    assert rank(Explicit(((1, 2), (3,)))) == OrdinalRank.finite(2)
    assert rank(Union(FiniteRank(2), Schreier())) == OrdinalRank.omega()
    assert rank(Union(FiniteRank(4), Explicit(((1,),)))) == OrdinalRank.finite(4)


def test_rank_of_finite_rank_truncation_matches_closed_form():
    for n in range(1, 5):
        for window in range(1, 7):
            assert int(rank(truncate(FiniteRank(n), window))) == min(n, window)


def test_rank_truncated_schreier_monotone_and_finite():
    ranks = [rank(truncate(Schreier(), n)) for n in range(1, 13)]
    assert all(r.is_finite for r in ranks)
    assert all(a <= b for a, b in zip(ranks, ranks[1:]))
    assert all(r < rank(Schreier()) for r in ranks)
    # longest Schreier set inside [1, N] has floor((N + 1) / 2) elements
    assert [int(r) for r in ranks] == [(n + 1) // 2 for n in range(1, 13)]


def brute_truncation(family, n_max):
    out = []
    for k in range(n_max + 1):
        for a in combinations(range(1, n_max + 1), k):
            if contains(family, a):
                out.append(a)
    return sorted(out, key=lambda a: (len(a), a))


def test_truncate_examples():
    assert truncate(FiniteRank(1), 2).members == ((), (1,), (2,))
    assert truncate(Schreier(), 3).members == ((), (1,), (2,), (3,), (2, 3))
    assert truncate(Union(FiniteRank(1), Explicit(((1, 2),))), 2).members == ((), (1,), (2,), (1, 2))


@pytest.mark.parametrize("family", [FiniteRank(2), FiniteRank(3), Schreier(), Union(FiniteRank(1), Schreier())])
@pytest.mark.parametrize("n_max", [1, 4, 7])
def test_truncate_matches_brute_force(family, n_max):
    assert list(truncate(family, n_max).members) == brute_truncation(family, n_max)


def test_truncate_cap():
    with pytest.raises(CapExceeded):
        truncate(FiniteRank(5), 30, cap=1000)
    with pytest.raises(ValueError):
        truncate(Schreier(), 0)


@pytest.mark.parametrize(
    "text",
    ["finite-rank:3", "schreier", "explicit:[[1],[2,3]]", "union(finite-rank:2,schreier)",
     "union(explicit:[[1,2]],union(schreier,finite-rank:1))", "explicit:[]"],
)
def test_literal_round_trip(text):
    fam = parse_family(text)
    assert parse_family(format_family(fam)) == fam


def test_literal_values():
    assert parse_family("union(finite-rank:2,schreier)") == Union(FiniteRank(2), Schreier())
    assert parse_family("explicit:[[1],[2,3]]") == Explicit(((1,), (2, 3)))


@pytest.mark.parametrize("bad", ["finite-rank:0", "finite-rank:x", "schreir", "explicit:[[2,1]]",
                                 "explicit:{}", "union(schreier)", "explicit:[[1],[1]]"])
def test_literal_errors(bad):
    with pytest.raises(ParseError):
        parse_family(bad)
