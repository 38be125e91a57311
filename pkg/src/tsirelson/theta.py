"""The weight theta in (0, 1): an exact rational or a root form ``n^(-1/q)``."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union as TUnion

from .errors import ParseError, ThetaError


@dataclass(frozen=True)
class Rational:
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ThetaError("denominator must be positive")
        v = Fraction(self.numerator, self.denominator)
        if not 0 < v < 1:
            raise ThetaError(f"theta = {v} is not in (0, 1)")
        # store reduced so equal values compare equal
        object.__setattr__(self, "numerator", v.numerator)
        object.__setattr__(self, "denominator", v.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    exact = True

    def __float__(self):
        return self.numerator / self.denominator

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class RootForm:
    """``theta = n ** (-1/q)``; always strictly between ``1/n`` and 1."""

    n: int
    q: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ThetaError("root form needs an integer n >= 2")
        if not self.q > 1:
            raise ThetaError("root form needs q > 1")
        object.__setattr__(self, "n", int(self.n))

    @property
    def value(self) -> float:
        return self.n ** (-1.0 / self.q)

    exact = False

    def __float__(self):
        return self.value

    def __str__(self):
        q = int(self.q) if float(self.q).is_integer() else self.q
        return f"root:n={self.n},q={q}"


ThetaSpec = TUnion[Rational, RootForm]

_ROOT = re.compile(r"root:n=(\d+),q=([0-9.eE+-]+)$")


def parse_theta(text: str) -> ThetaSpec:
    """``1/2``, ``0.75`` (read as an exact decimal) or ``root:n=2,q=2``."""
    text = text.strip()
    m = _ROOT.match(text)
    try:
        if m:
            q = float(m.group(2))
            if not math.isfinite(q):
                raise ThetaError("q must be finite")
            return RootForm(int(m.group(1)), q)
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ThetaError):
            raise
        raise ParseError(f"bad theta literal {text!r}") from None
    return Rational(v.numerator, v.denominator)


def as_theta(theta) -> ThetaSpec:
    """Accept a ThetaSpec, a Fraction/int pair-like value, or a literal string."""
    if isinstance(theta, (Rational, RootForm)):
        return theta
    if isinstance(theta, str):
        return parse_theta(theta)
    if isinstance(theta, Fraction):
        return Rational(theta.numerator, theta.denominator)
    raise TypeError(f"cannot interpret {theta!r} as theta; use Rational or RootForm")
