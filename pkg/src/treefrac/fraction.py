"""Group of fractions of the forest category, and its direct-limit action.

A fraction pair (num, den) is an ordered pair of trees with the same leaf
count; two pairs are equivalent when a common refinement of both sides
makes them equal.  Multiplication stabilizes den(a) against num(b) with
the minimal common refinement, which makes every operation deterministic:

    (f1, g1) * (f2, g2) = (p.f1, q.g2)   where   p.g1 == q.f2.

The same stabilization drives the direct-limit action: a vector of the
limit is an anchor tree f together with a payload living over target(f),
and refining the anchor by a forest p transports the payload through the
functor (payload -> phi(p) . payload).  Payloads here carry the raw
(unnormalized) functor; inner products divide by the unitarity constant
per anchor leaf, which keeps every value an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .trees import (
    LEAF,
    Forest,
    LiteralError,
    Tree,
    apply_forest,
    caret_positions,
    collapse_caret,
    common_refinement,
    format_tree,
    _parse_tree_at,
)


@dataclass(frozen=True)
class FractionPair:
    """Ordered pair of trees with equal leaf counts (not necessarily reduced)."""

    num: Tree
    den: Tree

    def __post_init__(self):
        if self.num.leaves != self.den.leaves:
            raise ValueError(
                f"leaf counts differ: {self.num.leaves} vs {self.den.leaves}"
            )

    @classmethod
    def identity(cls) -> FractionPair:
        return cls(LEAF, LEAF)

    @property
    def leaves(self) -> int:
        return self.num.leaves

    def inverse(self) -> FractionPair:
        return FractionPair(self.den, self.num)

    def __invert__(self) -> FractionPair:
        return self.inverse()

    def __mul__(self, other: FractionPair) -> FractionPair:
        if not isinstance(other, FractionPair):
            return NotImplemented
        return fraction_multiply(self, other)

    def refine(self, forest: Forest) -> FractionPair:
        """Equivalent pair with `forest` grafted onto both trees."""
        return FractionPair(apply_forest(self.num, forest), apply_forest(self.den, forest))

    def __str__(self) -> str:
        return f"{format_tree(self.num)}|{format_tree(self.den)}"


def parse_pair(text: str) -> FractionPair:
    num, pos = _parse_tree_at(text, 0)
    if pos >= len(text) or text[pos] != "|":
        raise LiteralError("expected '|' between trees", pos)
    den, end = _parse_tree_at(text, pos + 1)
    if end != len(text):
        raise LiteralError("trailing characters after pair", end)
    return FractionPair(num, den)


def fraction_multiply(a: FractionPair, b: FractionPair) -> FractionPair:
    _, p, q = common_refinement(a.den, b.num)
    return FractionPair(apply_forest(a.num, p), apply_forest(b.den, q))


def reduce_pair(num: Tree, den: Tree) -> tuple[Tree, Tree]:
    """Cancel common carets until none remain."""
    if num.leaves != den.leaves:
        raise ValueError(f"leaf counts differ: {num.leaves} vs {den.leaves}")
    while True:
        shared = set(caret_positions(num)) & set(caret_positions(den))
        if not shared:
            return num, den
        i = min(shared)
        num = collapse_caret(num, i)
        den = collapse_caret(den, i)


def fraction_equals(a: FractionPair, b: FractionPair) -> bool:
    """Equality in the group of fractions (reduce both sides and compare)."""
    return reduce_pair(a.num, a.den) == reduce_pair(b.num, b.den)


# --------------------------------------------------------------------------
# Direct-limit vectors and the fraction-group action on them.
# --------------------------------------------------------------------------

PhiHandle = Callable[[Forest], "object"]
"""Functor on forests; returns a matrix acting on payloads by `.dot`."""


@dataclass(frozen=True)
class LimitVector:
    """A direct-limit vector: anchor tree plus payload over its target.

    The payload is a matrix of shape (k**anchor.leaves, k) whose columns
    span the image of the unit object; the vacuum has anchor LEAF and the
    identity payload.
    """

    anchor: Tree
    payload: object

    def refine(self, forest: Forest, phi: PhiHandle) -> LimitVector:
        return LimitVector(apply_forest(self.anchor, forest), phi(forest).dot(self.payload))


def limit_act(g: FractionPair, v: LimitVector, phi: PhiHandle) -> LimitVector:
    """Action of the fraction group on the direct limit.

    Stabilizes den(g) against the anchor: with p.den(g) == q.anchor,
    the result is (p.num(g), phi(q) . payload).
    """
    _, p, q = common_refinement(g.den, v.anchor)
    return LimitVector(apply_forest(g.num, p), phi(q).dot(v.payload))


def limit_equivalent(v: LimitVector, w: LimitVector, phi: PhiHandle) -> bool:
    """Direct-limit equality, decided at the minimal common anchor.

    Sufficient because the transport maps are injective (phi of a tree has
    a left inverse up to the positive unitarity constant).
    """
    _, p, q = common_refinement(v.anchor, w.anchor)
    a = phi(p).dot(v.payload)
    b = phi(q).dot(w.payload)
    return (a == b).all()


def limit_inner(
    v: LimitVector,
    w: LimitVector,
    phi: PhiHandle,
    loop_value: int,
    unitarity_constant: int,
) -> Fraction:
    """Invariant inner product <v, w> on the direct limit.

    At a common anchor with n leaves the value is trace(B* A) divided by
    loop_value * unitarity_constant**(n-1); the weight absorbs the raw
    (unnormalized) functor so refinement leaves the value unchanged.
    """
    u, p, q = common_refinement(v.anchor, w.anchor)
    a = phi(p).dot(v.payload)
    b = phi(q).dot(w.payload)
    trace = (a * b).sum()
    return Fraction(int(trace), loop_value * unitarity_constant ** (u.leaves - 1))
