"""Compact families of finite subsets of N.

A family is one of four immutable constructors:

* ``FiniteRank(n)``  -- all sets with at most ``n`` elements,
* ``Schreier()``     -- all sets ``A`` with ``|A| <= min A``,
* ``Explicit(...)``  -- a finite list of sets,
* ``Union(l, r)``    -- membership in either side.

Each constructor is compact by construction. Finite sets are plain tuples of
strictly increasing positive integers; ``finite_set`` validates them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union as TUnion

from .errors import CapExceeded, InvalidBlocks, ParseError
from .ordinal import OrdinalRank, ordinal_max

#: Largest element accepted in a finite set unless a caller widens it.
DEFAULT_WINDOW = 10**6
#: Default number of members ``truncate`` may list before giving up.
DEFAULT_TRUNCATE_CAP = 100_000

FiniteSet = tuple  # tuple[int, ...], strictly increasing, elements >= 1


def finite_set(elements: Iterable[int], window: int = DEFAULT_WINDOW) -> FiniteSet:
    out = tuple(int(e) for e in elements)
    for e in out:
        if e < 1:
            raise ValueError(f"elements of N start at 1, got {e}")
        if e > window:
            raise ValueError(f"element {e} exceeds the window {window}")
    for a, b in zip(out, out[1:]):
        if a >= b:
            raise ValueError(f"set {list(out)} is not strictly increasing")
    return out


@dataclass(frozen=True)
class SuccessiveBlocks:
    """Nonempty finite sets ``E_1 < E_2 < ... < E_d`` (``max E_i < min E_{i+1}``)."""

    blocks: tuple[FiniteSet, ...]

    def __post_init__(self):
        try:
            blocks = tuple(finite_set(b) for b in self.blocks)
        except ValueError as exc:
            raise InvalidBlocks(str(exc)) from None
        if not blocks:
            raise InvalidBlocks("at least one block is required")
        for i, b in enumerate(blocks):
            if not b:
                raise InvalidBlocks(f"block {i} is empty")
        for i in range(len(blocks) - 1):
            if blocks[i][-1] >= blocks[i + 1][0]:
                raise InvalidBlocks(
                    f"blocks {i} and {i + 1} are not successive: "
                    f"max {blocks[i][-1]} >= min {blocks[i + 1][0]}"
                )
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @property
    def bounds(self) -> tuple[tuple[int, int], ...]:
        return tuple((b[0], b[-1]) for b in self.blocks)


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class FiniteRank:
    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("FiniteRank needs n >= 1")
        object.__setattr__(self, "n", int(self.n))

    def __str__(self):
        return f"finite-rank:{self.n}"


@dataclass(frozen=True)
class Schreier:
    def __str__(self):
        return "schreier"


@dataclass(frozen=True)
class Explicit:
    """A finite family given by its members; stored in canonical (size, lex) order."""

    members: tuple[FiniteSet, ...]

    def __post_init__(self):
        members = [finite_set(m) for m in self.members]
        if len(set(members)) != len(members):
            raise ValueError("duplicate members in explicit family")
        object.__setattr__(self, "members", tuple(sorted(members, key=_canon_key)))

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def _by_size(self) -> dict[int, tuple[FiniteSet, ...]]:
        out: dict[int, list] = {}
        for m in self.members:
            out.setdefault(len(m), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    def __str__(self):
        return "explicit:" + json.dumps([list(m) for m in self.members], separators=(",", ":"))


@dataclass(frozen=True)
class Union:
    left: "FamilyExpr"
    right: "FamilyExpr"

    def __str__(self):
        return f"union({self.left},{self.right})"


FamilyExpr = TUnion[FiniteRank, Schreier, Explicit, Union]


def _canon_key(a: FiniteSet):
    return (len(a), a)


def leaves(family: FamilyExpr) -> list:
    """Flatten nested unions into their non-union constituents, left to right."""
    if isinstance(family, Union):
        return leaves(family.left) + leaves(family.right)
    return [family]


# --------------------------------------------------------------- membership


def contains(family: FamilyExpr, a: Iterable[int]) -> bool:
    a = finite_set(a, window=float("inf"))
    if isinstance(family, FiniteRank):
        return len(a) <= family.n
    if isinstance(family, Schreier):
        return not a or len(a) <= a[0]
    if isinstance(family, Explicit):
        return a in family._member_set
    if isinstance(family, Union):
        return contains(family.left, a) or contains(family.right, a)
    raise TypeError(f"not a family: {family!r}")


def _candidates(family, prefix: tuple, d: int, lo: int, hi: int) -> Iterator[int]:
    """Values for the next witness element in ``(lo, hi]``, largest first."""
    if isinstance(family, FiniteRank):
        if d <= family.n:
            yield from range(hi, lo, -1)
    elif isinstance(family, Schreier):
        # the first element bounds the witness size from below
        floor = max(lo, d - 1) if not prefix else lo
        yield from range(hi, floor, -1)
    elif isinstance(family, Explicit):
        k = len(prefix)
        nxt = {m[k] for m in family._by_size.get(d, ()) if m[:k] == prefix}
        yield from sorted((v for v in nxt if lo < v <= hi), reverse=True)
    else:
        raise TypeError(f"not a leaf family: {family!r}")


def _search_witness(family, bounds: Sequence[tuple[int, int]]) -> Optional[FiniteSet]:
    d = len(bounds)
    prefix: list[int] = []

    def rec(i: int) -> bool:
        if i == d:
            return True
        lo = bounds[i - 1][1] if i else 0
        hi = bounds[i][0]
        for m in _candidates(family, tuple(prefix), d, lo, hi):
            prefix.append(m)
            if rec(i + 1):
                return True
            prefix.pop()
        return False

    if rec(0):
        return tuple(prefix)
    return None


def is_admissible(
    family: FamilyExpr, blocks: TUnion[SuccessiveBlocks, Sequence[Sequence[int]]]
) -> Optional[FiniteSet]:
    """Return a witness ``{m_1 < ... < m_d}`` in the family interleaving the blocks.

    The witness satisfies ``m_1 <= min E_1`` and ``max E_i < m_{i+1} <= min E_{i+1}``
    and has exactly one element per block.  ``None`` when no witness exists.
    """
    if not isinstance(blocks, SuccessiveBlocks):
        blocks = SuccessiveBlocks(tuple(tuple(b) for b in blocks))
    return admissible_bounds(family, blocks.bounds)


def admissible_bounds(family: FamilyExpr, bounds: Sequence[tuple[int, int]]) -> Optional[FiniteSet]:
    """Witness search on the ``(min E_i, max E_i)`` pairs alone.

    Admissibility only sees the extreme points of each block; callers that
    already hold validated blocks use this to skip re-validation.
    """
    bounds = tuple(bounds)
    if not bounds:
        return None
    for leaf in leaves(family):
        w = _search_witness(leaf, bounds)
        if w is not None:
            return w
    return None


# ------------------------------------------------------------------- ranks


def _explicit_tree_rank(members: Iterable[FiniteSet]) -> int:
    # tree of all initial segments of members, ordered by end-extension
    children: dict[tuple, set] = {(): set()}
    for m in members:
        for k in range(len(m)):
            children.setdefault(m[:k], set()).add(m[: k + 1])
            children.setdefault(m[: k + 1], set())

    memo: dict[tuple, int] = {}
    order = sorted(children, key=len, reverse=True)
    for node in order:
        kids = children[node]
        memo[node] = max((memo[c] + 1 for c in kids), default=0)
    return memo[()]


def rank(family: FamilyExpr) -> OrdinalRank:
    """Well-founded rank of the end-extension tree of the family.

    ``FiniteRank(n)`` has rank ``n`` and ``Schreier`` has rank omega: the node
    ``{m}`` roots a subtree of rank ``m - 1``.
    """
    if isinstance(family, FiniteRank):
        return OrdinalRank.finite(family.n)
    if isinstance(family, Schreier):
        return OrdinalRank.omega()
    if isinstance(family, Explicit):
        return OrdinalRank.finite(_explicit_tree_rank(family.members))
    if isinstance(family, Union):
        return ordinal_max(rank(family.left), rank(family.right))
    raise TypeError(f"not a family: {family!r}")


# --------------------------------------------------------------- truncation


def _enumerate(family, n_max: int) -> Iterator[FiniteSet]:
    if isinstance(family, FiniteRank):
        for k in range(0, min(family.n, n_max) + 1):
            yield from combinations(range(1, n_max + 1), k)
    elif isinstance(family, Schreier):
        yield ()
        for first in range(1, n_max + 1):
            rest = range(first + 1, n_max + 1)
            for k in range(0, min(first - 1, len(rest)) + 1):
                for tail in combinations(rest, k):
                    yield (first,) + tail
    elif isinstance(family, Explicit):
        for m in family.members:
            if not m or m[-1] <= n_max:
                yield m
    elif isinstance(family, Union):
        yield from _enumerate(family.left, n_max)
        yield from _enumerate(family.right, n_max)
    else:
        raise TypeError(f"not a family: {family!r}")


def truncate(family: FamilyExpr, n_max: int, cap: int = DEFAULT_TRUNCATE_CAP) -> Explicit:
    """Explicit list of the members whose elements are all ``<= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    seen: set = set()
    for a in _enumerate(family, n_max):
        seen.add(a)
        if len(seen) > cap:
            raise CapExceeded(f"truncation to [1, {n_max}] has more than {cap} members")
    return Explicit(tuple(seen))


# ----------------------------------------------------------------- literals

_FINITE_RANK = re.compile(r"finite-rank:(\d+)$")


def parse_family(text: str) -> FamilyExpr:
    """Parse ``finite-rank:3``, ``schreier``, ``explicit:[[1],[2,3]]`` or ``union(a,b)``."""
    text = text.strip()
    if text == "schreier":
        return Schreier()
    m = _FINITE_RANK.match(text)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError("finite-rank needs n >= 1")
        return FiniteRank(n)
    if text.startswith("explicit:"):
        try:
            raw = json.loads(text[len("explicit:"):])
            if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
                raise ParseError("explicit family must be a JSON list of lists")
            return Explicit(tuple(tuple(r) for r in raw))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ParseError(f"bad explicit family {text!r}: {exc}") from None
    if text.startswith("union(") and text.endswith(")"):
        inner = text[len("union("):-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 0:
                return Union(parse_family(inner[:i]), parse_family(inner[i + 1:]))
        raise ParseError(f"union needs two comma-separated families: {text!r}")
    raise ParseError(f"unknown family literal {text!r}")


def format_family(family: FamilyExpr) -> str:
    return str(family)
