"""Finitely supported vectors (elements of c_00)."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Real
from typing import Iterable, Mapping

from .errors import ParseError


class SparseVector:
    """Immutable map from positive positions to nonzero coefficients.

    Zero coefficients are dropped on construction, so ``support`` is exactly
    the key set. Coefficients may be ``int``, ``Fraction`` or ``float``.
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[int, Real] | Iterable[tuple[int, Real]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, Real] = {}
        for k, v in items:
            k = int(k)
            if k < 1:
                raise ValueError(f"positions start at 1, got {k}")
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"coefficient at {k} is not finite")
            if v != 0:
                clean[k] = v
        self._entries = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers
    @classmethod
    def unit(cls, k: int, coef: Real = 1) -> SparseVector:
        return cls({k: coef})

    @classmethod
    def ones(cls, m: int, start: int = 1) -> SparseVector:
        """``e_start + ... + e_(start+m-1)``."""
        return cls({start + i: 1 for i in range(m)})

    @classmethod
    def from_coefficients(cls, coefs: Iterable[Real], start: int = 1) -> SparseVector:
        return cls({start + i: c for i, c in enumerate(coefs)})

    # mapping protocol
    def __getitem__(self, k: int):
        return self._entries.get(k, 0)

    def items(self):
        return self._entries.items()

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self):
        return f"SparseVector({self.to_literal()!r})"

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._entries)

    # linear structure
    def __add__(self, other: SparseVector) -> SparseVector:
        out = dict(self._entries)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return SparseVector(out)

    def __neg__(self):
        return SparseVector({k: -v for k, v in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: Real) -> SparseVector:
        return SparseVector({k: c * v for k, v in self.items()})

    __rmul__ = __mul__

    def restrict(self, positions: Iterable[int]) -> SparseVector:
        """``Ex``: keep only the coordinates in ``positions``."""
        keep = set(positions)
        return SparseVector({k: v for k, v in self.items() if k in keep})

    def restrict_range(self, lo: int, hi: int) -> SparseVector:
        return SparseVector({k: v for k, v in self.items() if lo <= k <= hi})

    def abs(self) -> SparseVector:
        return SparseVector({k: abs(v) for k, v in self.items()})

    def map(self, fn) -> SparseVector:
        return SparseVector({k: fn(v) for k, v in self.items()})

    # classical norms
    def inf_norm(self):
        return max((abs(v) for v in self._entries.values()), default=0)

    def p_norm(self, p: float) -> float:
        if p == math.inf:
            return float(self.inf_norm())
        return math.fsum(abs(float(v)) ** p for v in self._entries.values()) ** (1.0 / p)

    # literals
    def to_literal(self) -> str:
        return ",".join(f"{k}:{_fmt_coef(v)}" for k, v in self.items())

    def to_json(self) -> dict:
        return {str(k): _json_coef(v) for k, v in self.items()}


def _fmt_coef(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(v)


def _json_coef(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def _parse_coef(text: str):
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        if any(c in text for c in ".eE") or text.lower() in ("inf", "nan"):
            v = float(text)
            if not math.isfinite(v):
                raise ValueError
            return v
        return int(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {text!r}") from None


def parse_vector(text: str) -> SparseVector:
    """Parse ``"1:1,2:0.5,5:-2"`` or a JSON object ``{"1": 1, "2": 0.5}``.

    An empty string is the zero vector.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON vector: {exc}") from None
        if not isinstance(raw, dict):
            raise ParseError("JSON vector must be an object")
        entries = {}
        for k, v in raw.items():
            if isinstance(v, str):
                v = _parse_coef(v)
            elif isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"bad coefficient {v!r}")
            entries[_parse_pos(k)] = v
        return _build(entries)
    if not text:
        return SparseVector()
    entries = {}
    for part in text.split(","):
        if ":" not in part:
            raise ParseError(f"expected position:coefficient, got {part!r}")
        k, v = part.split(":", 1)
        pos = _parse_pos(k)
        if pos in entries:
            raise ParseError(f"position {pos} given twice")
        entries[pos] = _parse_coef(v)
    return _build(entries)


def _parse_pos(k: str) -> int:
    try:
        pos = int(str(k).strip())
    except ValueError:
        raise ParseError(f"bad position {k!r}") from None
    if pos < 1:
        raise ParseError(f"positions start at 1, got {pos}")
    return pos


def _build(entries):
    try:
        return SparseVector(entries)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
