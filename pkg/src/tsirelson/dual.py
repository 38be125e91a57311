"""Enumeration of the norming sets ``K_s`` restricted to supports inside ``[1, N]``."""

from __future__ import annotations

from typing import Iterator

from .errors import CapExceeded
from .family import FamilyExpr, FiniteRank, Schreier, admissible_bounds, leaves
from .functional import Functional, Leaf, Node

DEFAULT_ENUM_CAP = 200_000


def dual_ball_enumerate(
    family: FamilyExpr, theta, support_bound: int, depth: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Functional]:
    """Yield every member of ``K_depth`` supported in ``[1, support_bound]`` exactly once.

    Members come level by level: ``K_0`` first, then the elements of depth
    exactly 1, and so on.  ``theta`` does not affect membership and is only
    accepted for symmetry with the other entry points.
    """
    if support_bound < 1 or depth < 0:
        return
    current: list[Functional] = []
    for k in range(1, support_bound + 1):
        current.extend((Leaf(1, k), Leaf(-1, k)))
    if len(current) > cap:
        raise CapExceeded(f"K_0 on [1, {support_bound}] exceeds {cap}")
    yield from current
    adm_cache: dict[tuple, bool] = {}

    def admissible(bounds):
        hit = adm_cache.get(bounds)
        if hit is None:
            hit = adm_cache[bounds] = admissible_bounds(family, bounds) is not None
        return hit

    # for hereditary families an inadmissible chain has no admissible extension
    hereditary = all(isinstance(l, (FiniteRank, Schreier)) for l in leaves(family))

    for s in range(depth):
        by_lo = sorted(current, key=lambda f: f.lo)
        los = [f.lo for f in by_lo]
        fresh: list[Functional] = []

        def extend(chain: list[Functional], has_top: bool, start: int):
            if chain:
                ok = admissible(tuple((f.lo, f.hi) for f in chain))
                if not ok and hereditary:
                    return
                if ok and has_top:
                    fresh.append(Node(tuple(chain)))
                    if len(current) + len(fresh) > cap:
                        raise CapExceeded(f"K_{s + 1} on [1, {support_bound}] exceeds {cap}")
            # next child must start after the last child's support
            nxt = chain[-1].hi if chain else 0
            k = start
            while k < len(by_lo) and los[k] <= nxt:
                k += 1
            for idx in range(k, len(by_lo)):
                f = by_lo[idx]
                chain.append(f)
                extend(chain, has_top or f.depth == s, idx + 1)
                chain.pop()

        extend([], False, 0)
        yield from fresh
        current = current + fresh
