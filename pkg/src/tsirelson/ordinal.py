"""Ordinals below omega^omega in Cantor normal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class OrdinalRank:
    """``omega^e1 * c1 + omega^e2 * c2 + ...`` with ``e1 > e2 > ...`` and ``ci > 0``.

    The empty term list is the ordinal 0.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        for e, c in terms:
            if e < 0 or c <= 0:
                raise ValueError(f"bad Cantor normal form term {(e, c)}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if e1 <= e2:
                raise ValueError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def finite(cls, n: int) -> OrdinalRank:
        if n < 0:
            raise ValueError("finite ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega(cls, power: int = 1) -> OrdinalRank:
        return cls(((power, 1),))

    @property
    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def succ(self) -> OrdinalRank:
        if self.terms and self.terms[-1][0] == 0:
            e, c = self.terms[-1]
            return OrdinalRank(self.terms[:-1] + ((0, c + 1),))
        return OrdinalRank(self.terms + ((0, 1),))

    def __add__(self, other: OrdinalRank) -> OrdinalRank:
        # terms of self below the leading exponent of other are absorbed
        if not other.terms:
            return self
        lead, lead_c = other.terms[0]
        kept = [t for t in self.terms if t[0] > lead]
        same = [c for e, c in self.terms if e == lead]
        head = (lead, lead_c + (same[0] if same else 0))
        return OrdinalRank(tuple(kept) + (head,) + other.terms[1:])

    def _key(self):
        return self.terms

    def __lt__(self, other):
        if not isinstance(other, OrdinalRank):
            return NotImplemented
        # lexicographic on (exponent, coefficient) pairs; a proper prefix is smaller
        return self._key() < other._key()

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            base = "ω" if e == 1 else f"ω^{e}"
            parts.append(base if c == 1 else f"{base}·{c}")
        return " + ".join(parts)


def ordinal_max(*ordinals: OrdinalRank) -> OrdinalRank:
    return max(ordinals, default=OrdinalRank())
