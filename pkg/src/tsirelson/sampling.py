"""Seeded random inputs for the verification suites.

Coefficients are uniform on [-1, 1] with occasional heavy-tailed spikes;
supports are either random subsets of a window or unions of short intervals.
All draws go through a caller-supplied ``random.Random`` so every suite is
reproducible from its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .vector import SparseVector


def _coefficient(rng: random.Random, exact: bool, signed: bool):
    if exact:
        mag = Fraction(rng.randint(1, 1000), 1000)
        if rng.random() < 0.15:
            mag *= 10 ** rng.randint(1, 3)
    else:
        mag = rng.uniform(1e-3, 1.0)
        if rng.random() < 0.15:
            mag *= 10.0 ** rng.randint(1, 3)
    if signed and rng.random() < 0.5:
        mag = -mag
    return mag


def random_support(rng: random.Random, size: int, window: int, start: int = 1) -> list[int]:
    """``size`` distinct positions in ``[start, start + window)``."""
    window = max(window, size)
    if rng.random() < 0.5:
        return sorted(rng.sample(range(start, start + window), size))
    # union of short intervals
    out: set[int] = set()
    while len(out) < size:
        lo = rng.randrange(start, start + window)
        for p in range(lo, min(lo + rng.randint(1, 4), start + window)):
            if len(out) < size:
                out.add(p)
    return sorted(out)


def random_vector(
    rng: random.Random,
    max_supp: int,
    window: int | None = None,
    exact: bool = False,
    signed: bool = True,
    min_supp: int = 1,
) -> SparseVector:
    size = rng.randint(min_supp, max_supp)
    window = window if window is not None else 2 * max_supp
    return SparseVector({p: _coefficient(rng, exact, signed) for p in random_support(rng, size, window)})


def random_blocks(
    rng: random.Random, max_blocks: int, max_total: int, exact: bool = False
) -> list[SparseVector]:
    """A block sequence: ``l <= max_blocks`` successive nonzero vectors, total support ``<= max_total``."""
    ell = rng.randint(1, min(max_blocks, max_total))
    # split the total support size among the blocks, each at least 1
    total = rng.randint(ell, max_total)
    sizes = [1] * ell
    for _ in range(total - ell):
        sizes[rng.randrange(ell)] += 1
    blocks = []
    pos = rng.randint(1, 3)
    for size in sizes:
        width = size + rng.randint(0, 2)
        supp = sorted(rng.sample(range(pos, pos + width), size))
        blocks.append(SparseVector({p: _coefficient(rng, exact, True) for p in supp}))
        pos += width + rng.randint(0, 2)
    return blocks


def random_rationals(rng: random.Random, max_len: int, max_den: int) -> list[Fraction]:
    """Non-negative rationals in [0, 1] with denominators at most ``max_den``."""
    ell = rng.randint(1, max_len)
    out = []
    for _ in range(ell):
        den = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(0, den), den))
    if not any(out):
        out[rng.randrange(ell)] = Fraction(1, rng.randint(1, max_den))
    return out


def sign_and_mask(rng: random.Random, x: SparseVector) -> tuple[dict[int, int], set[int]]:
    signs = {k: rng.choice((1, -1)) for k in x.support}
    mask = {k for k in x.support if rng.random() < 0.3}
    return signs, mask
