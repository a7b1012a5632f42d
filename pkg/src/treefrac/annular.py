"""Annular (affine, periodic) binary forests.

An annular forest with m roots and n leaves is stored in normal form as a
plain forest drawn inside one fundamental domain together with an integer
shift: the pair (F, k) denotes "apply F, then rotate the leaf circle by k
slots".  Rotating by n slots is the full-turn rotation tau_n, and the
shift may wind any number of times, so Mor(m, m) contains an infinite
cyclic group generated by the single-slot rotation rho_m.

Composition tracks where the first root's leaf block lands: root i of the
lower forest owns a contiguous block of leaf slots (shifted by the lower
shift), and each slot picks up the corresponding upper tree read
cyclically from the upper fundamental domain.  Literal grammar:
``A ::= F "@" k`` with k a decimal integer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .trees import (
    CompositionError,
    Forest,
    LiteralError,
    format_forest,
    graft,
    parse_forest,
)


@dataclass(frozen=True)
class AnnularForest:
    forest: Forest
    shift: int

    @classmethod
    def from_forest(cls, forest: Forest) -> AnnularForest:
        return cls(forest, 0)

    @property
    def roots(self) -> int:
        return self.forest.roots

    @property
    def leaves(self) -> int:
        return self.forest.leaves

    def __pow__(self, k: int) -> AnnularForest:
        if self.roots != self.leaves:
            raise CompositionError("only endomorphisms can be raised to a power")
        if k < 0:
            raise ValueError("negative powers are not defined for forests")
        acc = AnnularForest(Forest.trivial(self.roots), 0)
        for _ in range(k):
            acc = annular_compose(acc, self)
        return acc

    def __str__(self) -> str:
        return f"{format_forest(self.forest)}@{self.shift}"


def rho(n: int) -> AnnularForest:
    """Rotation of the n-strand circle by one slot."""
    return AnnularForest(Forest.trivial(n), 1)


def tau(n: int) -> AnnularForest:
    """Full-turn rotation: rho(n)**n."""
    return AnnularForest(Forest.trivial(n), n)


def _leaf_start(a: AnnularForest, root: int) -> int:
    """First leaf slot (1-based, winding) owned by root slot `root`."""
    n = a.roots
    wind, base = divmod(root - 1, n)
    prefix = sum(t.leaves for t in a.forest.trees[:base])
    return a.shift + wind * a.leaves + prefix + 1


def annular_compose(a: AnnularForest, b: AnnularForest) -> AnnularForest:
    """Stack b on top of a; leaves(a) must equal roots(b).

    Returns the normal form (F, k).  The shift is the slot just before
    the first leaf of the composite's first root; the composite trees
    graft b's trees, read cyclically, onto a's trees.
    """
    if a.leaves != b.roots:
        raise CompositionError(
            f"lower has {a.leaves} leaves but upper has {b.roots} roots"
        )
    n = b.roots
    trees = []
    slot = a.shift + 1
    for t in a.forest.trees:
        tops = tuple(b.forest.trees[(r - 1) % n] for r in range(slot, slot + t.leaves))
        trees.append(graft(t, tops))
        slot += t.leaves
    shift = _leaf_start(b, a.shift + 1) - 1
    return AnnularForest(Forest(tuple(trees)), shift)


def parse_annular(text: str) -> AnnularForest:
    at = text.rfind("@")
    if at < 0:
        raise LiteralError("expected '@' before the shift", len(text))
    forest = parse_forest(text[:at])
    try:
        shift = int(text[at + 1 :])
    except ValueError:
        raise LiteralError("shift must be a decimal integer", at + 1) from None
    return AnnularForest(forest, shift)
