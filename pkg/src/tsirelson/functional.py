"""Norming functionals: trees whose leaves are ``±e_k*`` and whose nodes scale by theta.

A tree of depth ``s`` whose nodes all have successive, admissible children is
a member of the norming set ``K_s``.  Evaluation against a vector is
``leaf(sign, k) -> sign * x_k`` and ``node -> theta * sum(children)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Union as TUnion

from .errors import FunctionalError, ParseError, ThetaError
from .family import FamilyExpr, admissible_bounds
from .theta import ThetaSpec, as_theta
from .vector import SparseVector


@dataclass(frozen=True)
class Leaf:
    sign: int
    position: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise FunctionalError(f"leaf sign must be +1 or -1, got {self.sign}")
        if int(self.position) != self.position or self.position < 1:
            raise FunctionalError(f"leaf position must be a positive integer, got {self.position}")

    depth = 0

    @property
    def support(self) -> tuple[int, ...]:
        return (self.position,)

    @property
    def lo(self) -> int:
        return self.position

    @property
    def hi(self) -> int:
        return self.position

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}e{self.position}"


@dataclass(frozen=True)
class Node:
    children: tuple["Functional", ...]

    def __post_init__(self):
        children = tuple(self.children)
        if not children:
            raise FunctionalError("a node needs at least one child")
        object.__setattr__(self, "children", children)

    @cached_property
    def depth(self) -> int:
        return 1 + max(c.depth for c in self.children)

    @cached_property
    def support(self) -> tuple[int, ...]:
        out: list[int] = []
        for c in self.children:
            out.extend(c.support)
        return tuple(sorted(set(out)))

    @property
    def lo(self) -> int:
        return self.support[0]

    @property
    def hi(self) -> int:
        return self.support[-1]

    def __str__(self):
        return "θ[" + ", ".join(str(c) for c in self.children) + "]"


Functional = TUnion[Leaf, Node]


def theta_number(theta):
    """Numeric value of theta: ``Fraction`` for exact specs, ``float`` otherwise."""
    if isinstance(theta, (int, float, Fraction)):
        return theta
    return as_theta(theta).value


def weights(f: Functional, theta) -> dict[int, object]:
    """Signed coefficient of each coordinate functional ``e_k*`` in ``f``."""
    t = theta_number(theta)
    out: dict[int, object] = {}

    def walk(g, scale):
        if isinstance(g, Leaf):
            out[g.position] = g.sign * scale
        else:
            for c in g.children:
                walk(c, scale * t)

    walk(f, 1)
    return out


def eval_functional(f: Functional, x: SparseVector, theta):
    """``<f, x>``; the arithmetic type follows theta and the coefficients of x."""
    t = theta_number(theta)

    def ev(g):
        if isinstance(g, Leaf):
            return g.sign * x[g.position]
        total = 0
        for c in g.children:
            total = total + ev(c)
        return t * total

    return ev(f)


def leaves_of(f: Functional) -> Iterator[Leaf]:
    if isinstance(f, Leaf):
        yield f
    else:
        for c in f.children:
            yield from leaves_of(c)


def validate_functional(family: FamilyExpr, theta, f: Functional) -> int:
    """Check ``f`` belongs to some ``K_s`` and return the least such ``s`` (its depth).

    Raises ``FunctionalError`` naming the path of the first bad node.
    """
    if theta is not None:
        t = float(as_theta(theta)) if not isinstance(theta, (int, float, Fraction)) else theta
        if not 0 < t < 1:
            raise ThetaError(f"theta = {t} is not in (0, 1)")

    def check(g, path):
        if isinstance(g, Leaf):
            return
        if not isinstance(g, Node):
            raise FunctionalError(f"not a functional: {g!r}", path)
        for i, c in enumerate(g.children):
            check(c, path + (i,))
        kids = g.children
        for i in range(len(kids) - 1):
            if kids[i].hi >= kids[i + 1].lo:
                raise FunctionalError(
                    f"children {i} and {i + 1} are not successive "
                    f"(max supp {kids[i].hi} >= min supp {kids[i + 1].lo})",
                    path,
                )
        bounds = [(c.lo, c.hi) for c in kids]
        if admissible_bounds(family, bounds) is None:
            raise FunctionalError(f"{len(kids)} children with supports {bounds} are not admissible", path)

    check(f, ())
    return f.depth


# -------------------------------------------------------------------- JSON


def functional_to_json(f: Functional):
    if isinstance(f, Leaf):
        return {"e": f.position, "sign": f.sign}
    return {"theta_children": [functional_to_json(c) for c in f.children]}


def functional_from_json(obj) -> Functional:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad functional JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"functional must be a JSON object, got {obj!r}")
    if "theta_children" in obj:
        kids = obj["theta_children"]
        if not isinstance(kids, list):
            raise ParseError("theta_children must be a list")
        return Node(tuple(functional_from_json(c) for c in kids))
    if "e" in obj:
        sign = obj.get("sign", 1)
        if not isinstance(obj["e"], int) or isinstance(obj["e"], bool) or sign not in (1, -1):
            raise ParseError(f"bad leaf {obj!r}")
        return Leaf(sign, obj["e"])
    raise ParseError(f"unrecognised functional {obj!r}")
