"""Level-by-level decompositions of a norming functional and the initial/final split.

``analyze`` builds, for a functional ``phi`` of depth ``m``, levels
``F^0, ..., F^m``: ``F^s`` lists the maximal subtrees of ``phi`` of depth at
most ``s`` from left to right.  A subtree persists unchanged from level to
level until its parent node is reached.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AnalysisError
from .family import FamilyExpr
from .functional import Functional, Leaf, Node, leaves_of, validate_functional
from .vector import SparseVector


@dataclass(frozen=True)
class Analysis:
    levels: tuple[tuple[Functional, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def root(self) -> Functional:
        return self.levels[-1][0]

    def members(self) -> list[Functional]:
        """Distinct members over all levels, by identity, in first-seen order."""
        seen: dict[int, Functional] = {}
        for level in self.levels:
            for f in level:
                seen.setdefault(id(f), f)
        return list(seen.values())


def analyze(family: FamilyExpr, theta, phi: Functional) -> Analysis:
    m = validate_functional(family, theta, phi)

    def at_level(g: Functional, s: int) -> list[Functional]:
        if g.depth <= s:
            return [g]
        out: list[Functional] = []
        for c in g.children:
            out.extend(at_level(c, s))
        return out

    return Analysis(tuple(tuple(at_level(phi, s)) for s in range(m + 1)))


def check_analysis(family: FamilyExpr, theta, phi: Functional, analysis: Analysis) -> list[str]:
    """Independent check of the three analysis conditions plus support nesting.

    Returns human-readable violations; an empty list means the analysis is valid.
    """
    problems: list[str] = []
    levels = analysis.levels
    supp_phi = set(phi.support)
    m = len(levels) - 1
    try:
        if validate_functional(family, theta, phi) != m:
            problems.append(f"phi has depth {phi.depth} but the analysis has {m + 1} levels")
    except Exception as exc:  # invalid phi is itself a violation
        problems.append(f"phi is not a norming functional: {exc}")
        return problems

    for s, level in enumerate(levels):
        if not level:
            problems.append(f"F^{s} is empty")
            continue
        for f in level:
            try:
                d = validate_functional(family, theta, f)
            except Exception as exc:
                problems.append(f"F^{s}: member {f} is not in any K_s ({exc})")
                continue
            if d > s:
                problems.append(f"F^{s}: member {f} has depth {d} > {s}")
        for a, b in zip(level, level[1:]):
            if a.hi >= b.lo:
                problems.append(f"F^{s}: members {a} and {b} are not successive")
        covered: list[int] = []
        for f in level:
            covered.extend(f.support)
        if sorted(covered) != sorted(supp_phi) or len(covered) != len(set(covered)):
            problems.append(f"F^{s}: supports do not partition supp(phi)")

    for s in range(m):
        lower = set(levels[s])
        for f in levels[s + 1]:
            if f in lower:
                continue
            if isinstance(f, Node) and all(c in lower for c in f.children):
                continue
            problems.append(f"F^{s + 1}: {f} is neither in F^{s} nor composed of members of F^{s}")

    if m < 0 or len(levels[-1]) != 1 or levels[-1][0] != phi:
        problems.append("the last level is not {phi}")

    for s in range(m):
        for f1 in levels[s]:
            a = set(f1.support)
            for f2 in levels[s + 1]:
                b = set(f2.support)
                if not (a <= b or not (a & b)):
                    problems.append(f"supports of {f1} (F^{s}) and {f2} (F^{s + 1}) overlap without nesting")
    return problems


def critical_level(analysis: Analysis, x: SparseVector) -> int:
    """Largest ``s < m`` at which at least two members of ``F^s`` meet ``supp(x)``.

    Zero for singleton supports. Meeting is read off supports since the
    inputs are assumed non-negative.
    """
    supp = set(x.support)
    if len(supp) == 1:
        return 0
    best = None
    for s in range(analysis.depth):
        hits = sum(1 for f in analysis.levels[s] if supp & set(f.support))
        if hits >= 2:
            best = s
    if best is None:
        raise AnalysisError(f"no level below the top meets {x} in two members")
    return best


def split_initial_final(analysis: Analysis, xs: list[SparseVector]) -> list[tuple[SparseVector, SparseVector]]:
    """Initial part ``x'_k`` and final part ``x''_k`` of each block.

    At the critical level ``s_k`` the members ``f_1, ..., f_d`` meeting ``x_k``
    cover its support; ``x'_k`` is ``x_k`` on ``supp(f_1)`` and ``x''_k`` is the
    rest.  A singleton block is all initial part.
    """
    phi = analysis.root
    if any(l.sign < 0 for l in leaves_of(phi)):
        raise AnalysisError("phi must have non-negative coordinates")
    union: list[int] = []
    for k, x in enumerate(xs):
        if not x:
            raise AnalysisError(f"block {k} is zero")
        if any(v < 0 for _, v in x.items()):
            raise AnalysisError(f"block {k} has negative coordinates")
        if k and xs[k - 1].support[-1] >= x.support[0]:
            raise AnalysisError(f"blocks {k - 1} and {k} are not successive")
        union.extend(x.support)
    if set(union) != set(phi.support):
        raise AnalysisError("supp(phi) must equal the union of the block supports")

    out = []
    for x in xs:
        supp = set(x.support)
        if len(supp) == 1:
            out.append((x, SparseVector()))
            continue
        s = critical_level(analysis, x)
        meeting = [f for f in analysis.levels[s] if supp & set(f.support)]
        first = set(meeting[0].support)
        rest = set().union(*(set(f.support) for f in meeting[1:]))
        out.append((x.restrict(first), x.restrict(rest)))
    return out
