"""Exact computation of the norm defined by

    ||x|| = max( ||x||_inf , theta * sup sum_i ||E_i x|| )

where the sup runs over admissible successive blocks ``E_1 < ... < E_d``.

Reduction to intervals.  Admissibility only sees ``min E_i`` and ``max E_i``,
blocks may be shrunk to the support of ``x`` (this only loosens the witness
constraints), and filling a block out to the support points between its
extremes keeps its extremes while not decreasing its norm (the basis is
1-unconditional).  So blocks can be taken to be runs of consecutive support
points, and the norm of ``x`` restricted to run ``[i, j]`` is memoised as
``N(i, j)``.  The single block equal to the whole run is excluded: it would
contribute ``theta * N(i, j) < N(i, j)`` and makes the equation circular.

Two kinds of admissibility strategy feed the table:

* partition strategies for ``FiniteRank`` and ``Schreier``: after an optional
  skipped prefix the remaining support is cut into ``c`` consecutive pieces,
  ``c <= n`` resp. ``c <= min E_1``;
* a witness strategy for explicit families: each member ``{m_1 < ... < m_d}``
  induces the blocks ``[m_t, m_(t+1))``, which must all meet the support.

Arithmetic is exact (``Fraction``) for rational theta and binary floating
point for root-form theta; the float error is ``O(|supp|^2 eps)``.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import CapExceeded, ThetaError
from .family import Explicit, FamilyExpr, FiniteRank, Schreier, admissible_bounds, leaves
from .functional import Functional, Leaf, Node, functional_to_json
from .theta import ThetaSpec, as_theta
from .vector import SparseVector

#: Default support-size limits for the interval DP, per family kind.
DP_CAPS = {"finite-rank": 64, "schreier": 40, "explicit": 64}
#: Default support-size limit for the exhaustive oracle.
ORACLE_CAP = 9


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return None
    return int(raw)


def dp_cap(family: FamilyExpr) -> int:
    override = _env_int("TSIRELSON_DP_CAP")
    if override is not None:
        return override
    caps = []
    for leaf in leaves(family):
        if isinstance(leaf, FiniteRank):
            caps.append(DP_CAPS["finite-rank"])
        elif isinstance(leaf, Schreier):
            caps.append(DP_CAPS["schreier"])
        else:
            caps.append(DP_CAPS["explicit"])
    return min(caps)


def oracle_cap() -> int:
    override = _env_int("TSIRELSON_ORACLE_CAP")
    return ORACLE_CAP if override is None else override


def prepare(theta, x: SparseVector):
    """Numeric theta and absolute coefficients in the engine's arithmetic."""
    spec = as_theta(theta)
    t = spec.value
    if not 0 < t < 1:
        raise ThetaError(f"theta = {t} is not in (0, 1)")
    if spec.exact:
        conv = lambda v: v if isinstance(v, Fraction) else Fraction(v)
    else:
        conv = float
    return spec, t, [abs(conv(v)) for _, v in x.items()]


@dataclass
class NormResult:
    value: object
    certificate: Functional
    stats: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)

    def to_json(self) -> dict:
        v = self.value
        return {
            "value": float(v),
            "value_exact": str(v) if isinstance(v, Fraction) else None,
            "certificate": functional_to_json(self.certificate),
            "stats": dict(self.stats),
        }


# ------------------------------------------------------------------ the DP


class _PartitionStrategy:
    """Skipped prefix, then ``c`` consecutive pieces with ``c <= limit(first point)``."""

    def __init__(self, table: "_IntervalTable", limit):
        self.t = table
        self.limit = limit
        # part[(a, j)][c] = (value, blocks) best cut of [a, j] into exactly c pieces
        self.part: dict[tuple[int, int], dict[int, tuple]] = {}

    def _fill_parts(self, a: int, j: int):
        t = self.t
        cells = {}
        cmax = min(self.limit(t.pos[a]), j - a + 1)
        for c in range(2, cmax + 1):
            best = None
            for k in range(a + c - 2, j):
                prev = self.part[(a, k)].get(c - 1)
                if prev is None:
                    continue
                t.stats["transitions"] += 1
                v = prev[0] + t.val[(k + 1, j)]
                if best is None or v > best[0]:
                    best = (v, prev[1] + ((k + 1, j),))
                elif v == best[0]:
                    blocks = prev[1] + ((k + 1, j),)
                    if blocks < best[1]:
                        best = (v, blocks)
            if best is not None:
                cells[c] = best
        self.part[(a, j)] = cells

    def best(self, i: int, j: int):
        self._fill_parts(i, j)
        t = self.t
        best = None
        for a in range(i, j + 1):
            cells = self.part[(a, j)]
            for c, (v, blocks) in cells.items():
                if a == i and c == 1:
                    continue
                key = (c, blocks)
                if best is None or v > best[0] or (v == best[0] and key < best[2]):
                    best = (v, blocks, key)
        return best

    def record(self, i: int, j: int):
        # single-piece cut of [i, j] is just N(i, j)
        self.part[(i, j)][1] = (self.t.val[(i, j)], ((i, j),))


class _WitnessStrategy:
    """Every member of a finite family, as a witness, induces one block tuple."""

    def __init__(self, table: "_IntervalTable", members):
        self.t = table
        self.members = [m for m in members if m]

    def best(self, i: int, j: int):
        t = self.t
        best = None
        for m in self.members:
            blocks = []
            ok = True
            for idx, lo in enumerate(m):
                a = max(bisect_left(t.pos, lo), i)
                b = (bisect_left(t.pos, m[idx + 1]) - 1) if idx + 1 < len(m) else j
                b = min(b, j)
                if a > b:
                    ok = False
                    break
                blocks.append((a, b))
            if not ok or (len(blocks) == 1 and blocks[0] == (i, j)):
                continue
            t.stats["transitions"] += 1
            v = sum((t.val[blk] for blk in blocks[1:]), t.val[blocks[0]])
            key = (len(blocks), tuple(blocks))
            if best is None or v > best[0] or (v == best[0] and key < best[2]):
                best = (v, tuple(blocks), key)
        return best

    def record(self, i: int, j: int):
        pass


class _IntervalTable:
    def __init__(self, family: FamilyExpr, theta: ThetaSpec, x: SparseVector):
        self.spec, self.theta, self.mag = prepare(theta, x)
        self.pos = list(x.support)
        self.sign = [1 if v > 0 else -1 for _, v in x.items()]
        self.val: dict[tuple[int, int], object] = {}
        self.choice: dict[tuple[int, int], object] = {}
        self.stats = {"support": len(self.pos), "intervals": 0, "transitions": 0}
        self.strategies = []
        explicit_members = []
        for leaf in leaves(family):
            if isinstance(leaf, FiniteRank):
                self.strategies.append(_PartitionStrategy(self, lambda _p, n=leaf.n: n))
            elif isinstance(leaf, Schreier):
                self.strategies.append(_PartitionStrategy(self, lambda p: p))
            elif isinstance(leaf, Explicit):
                explicit_members.extend(leaf.members)
            else:
                raise TypeError(f"not a family: {leaf!r}")
        if explicit_members:
            self.strategies.append(_WitnessStrategy(self, sorted(set(explicit_members))))
        self._certs: dict[tuple[int, int], Functional] = {}

    def run(self):
        n = len(self.pos)
        argmax = {}
        for i in range(n):
            argmax[(i, i)] = i
            for j in range(i + 1, n):
                prev = argmax[(i, j - 1)]
                argmax[(i, j)] = j if self.mag[j] > self.mag[prev] else prev
        for length in range(1, n + 1):
            for i in range(0, n - length + 1):
                j = i + length - 1
                self.stats["intervals"] += 1
                inf = self.mag[argmax[(i, j)]]
                best = None
                for strat in self.strategies:
                    cand = strat.best(i, j) if length > 1 else None
                    if cand is not None and (
                        best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[2] < best[2])
                    ):
                        best = cand
                if best is not None and self.theta * best[0] > inf:
                    self.val[(i, j)] = self.theta * best[0]
                    self.choice[(i, j)] = best[1]
                else:
                    self.val[(i, j)] = inf
                    self.choice[(i, j)] = argmax[(i, j)]
                for strat in self.strategies:
                    if isinstance(strat, _PartitionStrategy):
                        strat.part.setdefault((i, j), {})
                    strat.record(i, j)
        return self

    def certificate(self, i: int, j: int) -> Functional:
        key = (i, j)
        if key not in self._certs:
            ch = self.choice[key]
            if isinstance(ch, int):
                self._certs[key] = Leaf(self.sign[ch], self.pos[ch])
            else:
                self._certs[key] = Node(tuple(self.certificate(a, b) for a, b in ch))
        return self._certs[key]


def interval_table(family: FamilyExpr, theta, x: SparseVector, cap: Optional[int] = None) -> _IntervalTable:
    """Run the DP and expose every sub-run norm ``N(i, j)`` (used by growth probes)."""
    limit = dp_cap(family) if cap is None else cap
    if len(x) > limit:
        raise CapExceeded(f"support size {len(x)} exceeds the DP limit {limit}")
    return _IntervalTable(family, theta, x).run()


def norm_exact(family: FamilyExpr, theta, x: SparseVector, cap: Optional[int] = None) -> NormResult:
    """Norm of ``x`` with a norming functional attaining it."""
    spec = as_theta(theta)
    if not x:
        zero = Fraction(0) if spec.exact else 0.0
        return NormResult(zero, Leaf(1, 1), {"support": 0, "intervals": 0, "transitions": 0})
    table = interval_table(family, spec, x, cap)
    n = len(table.pos)
    return NormResult(table.val[(0, n - 1)], table.certificate(0, n - 1), dict(table.stats))


def norm(family: FamilyExpr, theta, x: SparseVector):
    return norm_exact(family, theta, x).value


# -------------------------------------------------------------- the oracle


def norm_oracle(family: FamilyExpr, theta, x: SparseVector, cap: Optional[int] = None):
    """Exhaustive evaluation over all successive subsets of the support.

    Every tuple of nonempty successive subsets of the current support is
    tried (elements may be skipped anywhere, blocks need not be intervals)
    and admissibility is decided by the witness search.  Exponential; meant
    as ground truth for small supports.
    """
    limit = oracle_cap() if cap is None else cap
    if len(x) > limit:
        raise CapExceeded(f"oracle support {len(x)} exceeds {limit}")
    spec, t, mag = prepare(theta, x)
    pos = list(x.support)
    if not pos:
        return Fraction(0) if spec.exact else 0.0
    adm_cache: dict[tuple, bool] = {}
    memo: dict[int, object] = {}
    # an inadmissible prefix has no admissible completion when the family is hereditary
    hereditary = all(isinstance(l, (FiniteRank, Schreier)) for l in leaves(family))

    def admissible(sig):
        hit = adm_cache.get(sig)
        if hit is None:
            hit = adm_cache[sig] = admissible_bounds(family, sig) is not None
        return hit

    def value(mask: int):
        if mask in memo:
            return memo[mask]
        idx = [k for k in range(len(pos)) if mask >> k & 1]
        inf = max(mag[k] for k in idx)
        best = None
        n = len(idx)

        # walk the elements; each is skipped, starts a block, or joins the open block
        def walk(r, closed_sum, closed_sig, open_mask, open_lo, open_hi):
            nonlocal best
            if open_mask:
                sig = closed_sig + ((open_lo, open_hi),)
                if hereditary and not admissible(sig):
                    return
            if r == n:
                if not open_mask or open_mask == mask:
                    return
                if not hereditary and not admissible(sig):
                    return
                v = value(open_mask)
                total = v if closed_sum is None else closed_sum + v
                if best is None or total > best:
                    best = total
                return
            k = idx[r]
            walk(r + 1, closed_sum, closed_sig, open_mask, open_lo, open_hi)
            if open_mask:
                v = value(open_mask)
                walk(r + 1, v if closed_sum is None else closed_sum + v, sig, 1 << k, pos[k], pos[k])
                walk(r + 1, closed_sum, closed_sig, open_mask | 1 << k, open_lo, pos[k])
            else:
                walk(r + 1, closed_sum, closed_sig, 1 << k, pos[k], pos[k])

        walk(0, None, (), 0, 0, 0)
        out = inf if best is None or not t * best > inf else t * best
        memo[mask] = out
        return out

    return value((1 << len(pos)) - 1)
