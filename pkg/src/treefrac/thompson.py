"""Thompson's groups F, T and V as groups of fractions of forest categories.

Element conventions (all indices 0-based internally and in literals):

- An F element is a reduced pair (num, den) of trees with equal leaf
  counts.  It acts on [0, 1] by sending the i-th interval of den's dyadic
  partition affinely onto the i-th interval of num's partition, so
  multiplication matches composition of the piecewise-linear maps:
  to_pl_map(a * b) == to_pl_map(a).compose(to_pl_map(b)).
- A T element adds a cyclic mark k: den interval i maps onto num interval
  (i + k) mod n.  A caret cancels only when its image under the mark is a
  caret that does not wrap around the circle.
- A V element adds a leaf permutation: den interval i maps onto num
  interval perm[i], order-preservingly within each interval.  A caret
  cancels only when the permutation sends its two leaves to an adjacent
  increasing pair that forms a caret.

Literals extend the pair grammar ``T1 "|" T2``: T elements append ``@k``
and V elements append ``% p0 p1 ... p(n-1)`` (the image list of perm).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .fraction import FractionPair, fraction_multiply, parse_pair, reduce_pair
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
    full_tree,
    graft,
    random_tree,
    tree_to_partition,
)


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class DyadicRational:
    """numerator / 2**exponent in lowest terms (odd numerator or exponent 0)."""

    numerator: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")
        if self.exponent > 0 and self.numerator % 2 == 0:
            raise ValueError("not in lowest terms")

    @classmethod
    def from_fraction(cls, x: Fraction) -> DyadicRational:
        if not is_dyadic(x):
            raise ValueError(f"{x} is not a dyadic rational")
        return cls(x.numerator, x.denominator.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 2**self.exponent)

    def __str__(self) -> str:
        return str(self.to_fraction())


# --------------------------------------------------------------------------
# Piecewise-linear maps of [0, 1].
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PLMap:
    """Increasing PL homeomorphism of [0, 1], stored with minimal breakpoints."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("breakpoints must run from (0,0) to (1,1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0 or y1 <= y0:
                raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def from_breakpoints(cls, points) -> PLMap:
        """Build from breakpoints, dropping interior collinear ones."""
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        out = [pts[0]]
        for cur, nxt in zip(pts[1:], pts[2:] + [None]):
            if nxt is not None:
                prev = out[-1]
                s0 = (cur[1] - prev[1]) / (cur[0] - prev[0])
                s1 = (nxt[1] - cur[1]) / (nxt[0] - cur[0])
                if s0 == s1:
                    continue
            out.append(cur)
        return cls(tuple(out))

    @classmethod
    def identity(cls) -> PLMap:
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def __call__(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("argument outside [0, 1]")
        pts = self.points
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError("unreachable")

    def inverse(self) -> PLMap:
        return PLMap(tuple((y, x) for x, y in self.points))

    def compose(self, other: PLMap) -> PLMap:
        """self after other."""
        inv = other.inverse()
        xs = sorted({x for x, _ in other.points} | {inv(x) for x, _ in self.points})
        return PLMap.from_breakpoints([(x, self(other(x))) for x in xs])

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])
        )

    def __str__(self) -> str:
        return ", ".join(f"{x}->{y}" for x, y in self.points)


# --------------------------------------------------------------------------
# F
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FElement:
    """Reduced tree pair; equality of elements is equality of pairs."""

    num: Tree
    den: Tree

    def __post_init__(self):
        if self.num.leaves != self.den.leaves:
            raise ValueError("leaf counts differ")
        if set(caret_positions(self.num)) & set(caret_positions(self.den)):
            raise ValueError("pair is not reduced")

    @classmethod
    def reduce(cls, num: Tree, den: Tree) -> FElement:
        return cls(*reduce_pair(num, den))

    @classmethod
    def from_pair(cls, pair: FractionPair) -> FElement:
        return cls.reduce(pair.num, pair.den)

    @classmethod
    def identity(cls) -> FElement:
        return cls(LEAF, LEAF)

    @property
    def leaves(self) -> int:
        return self.num.leaves

    @property
    def is_identity(self) -> bool:
        return self.num.is_leaf

    def pair(self) -> FractionPair:
        return FractionPair(self.num, self.den)

    def inverse(self) -> FElement:
        return FElement(self.den, self.num)

    def __invert__(self) -> FElement:
        return self.inverse()

    def __mul__(self, other: FElement) -> FElement:
        if not isinstance(other, FElement):
            return NotImplemented
        return FElement.from_pair(fraction_multiply(self.pair(), other.pair()))

    def __pow__(self, k: int) -> FElement:
        return _group_power(self, k, FElement.identity())

    def to_pl_map(self) -> PLMap:
        xs = tree_to_partition(self.den)
        ys = tree_to_partition(self.num)
        return PLMap.from_breakpoints(list(zip(xs, ys)))

    def to_t(self) -> TElement:
        return TElement(self.num, self.den, 0)

    def to_v(self) -> VElement:
        return VElement(self.num, self.den, tuple(range(self.leaves)))

    def __str__(self) -> str:
        return f"{format_tree(self.num)}|{format_tree(self.den)}"


def _group_power(g, k: int, identity):
    if k < 0:
        return _group_power(g.inverse(), -k, identity)
    acc, base = identity, g
    while k:
        if k & 1:
            acc = acc * base
        base = base * base
        k >>= 1
    return acc


def x_generator(i: int = 0) -> FElement:
    """The standard generators x0, x1, ... of F."""
    if i < 0:
        raise ValueError("generator index must be non-negative")
    x0 = FElement(Tree(Tree(LEAF, LEAF), LEAF), Tree(LEAF, Tree(LEAF, LEAF)))
    g = x0
    for _ in range(i):
        g = FElement(Tree(LEAF, g.num), Tree(LEAF, g.den))
    return g


# --------------------------------------------------------------------------
# T
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TElement:
    """Reduced tree pair with a cyclic mark: den leaf i -> num leaf (i+mark) mod n."""

    num: Tree
    den: Tree
    mark: int

    def __post_init__(self):
        n = self.num.leaves
        if n != self.den.leaves:
            raise ValueError("leaf counts differ")
        if not 0 <= self.mark < n:
            raise ValueError(f"mark {self.mark} out of range for {n} leaves")
        if _t_cancellable(self.num, self.den, self.mark) is not None:
            raise ValueError("pair is not reduced")

    @classmethod
    def reduce(cls, num: Tree, den: Tree, mark: int) -> TElement:
        n = num.leaves
        if n != den.leaves:
            raise ValueError("leaf counts differ")
        mark %= n
        while True:
            hit = _t_cancellable(num, den, mark)
            if hit is None:
                return cls(num, den, mark)
            i0, j0 = hit
            den = collapse_caret(den, i0 + 1)
            num = collapse_caret(num, j0 + 1)
            if mark <= j0:
                pass
            elif mark == j0 + 1:
                mark = j0
            else:
                mark -= 1
            n -= 1

    @classmethod
    def identity(cls) -> TElement:
        return cls(LEAF, LEAF, 0)

    @property
    def leaves(self) -> int:
        return self.num.leaves

    def inverse(self) -> TElement:
        return TElement.reduce(self.den, self.num, (-self.mark) % self.leaves)

    def __invert__(self) -> TElement:
        return self.inverse()

    def __mul__(self, other: TElement) -> TElement:
        if not isinstance(other, TElement):
            return NotImplemented
        _, p, q = common_refinement(self.den, other.num)
        a = _t_refine_den(self, p)
        b = _t_refine_num(other, q)
        assert a.den == b.num
        return TElement.reduce(a.num, b.den, (a.mark + b.mark) % a.num.leaves)

    def __pow__(self, k: int) -> TElement:
        return _group_power(self, k, TElement.identity())

    def __str__(self) -> str:
        return f"{format_tree(self.num)}|{format_tree(self.den)}@{self.mark}"


@dataclass(frozen=True)
class _TPair:
    """Unreduced marked pair produced by refinement."""

    num: Tree
    den: Tree
    mark: int


def _t_cancellable(num: Tree, den: Tree, mark: int) -> tuple[int, int] | None:
    """First den caret whose image under the mark is a non-wrapping num caret."""
    n = num.leaves
    num_carets = set(caret_positions(num))
    for d1 in caret_positions(den):
        i0 = d1 - 1
        j0 = (i0 + mark) % n
        if j0 <= n - 2 and (j0 + 1) in num_carets:
            return i0, j0
    return None


def _t_refine_den(el: TElement, p: Forest) -> _TPair:
    n = el.leaves
    p_num = tuple(p.trees[(j - el.mark) % n] for j in range(n))
    return _TPair(
        graft(el.num, p_num),
        apply_forest(el.den, p),
        sum(t.leaves for t in p_num[: el.mark]),
    )


def _t_refine_num(el: TElement, q: Forest) -> _TPair:
    n = el.leaves
    q_den = tuple(q.trees[(i + el.mark) % n] for i in range(n))
    return _TPair(
        apply_forest(el.num, q),
        graft(el.den, q_den),
        sum(t.leaves for t in q.trees[: el.mark]),
    )


def rotation_element(a: int, n: int) -> TElement:
    """Rotation of the dyadic circle by a / 2**n."""
    if not 0 <= a < 2**n:
        raise ValueError(f"rotation numerator {a} out of range for exponent {n}")
    t = full_tree(n)
    return TElement.reduce(t, t, a)


# --------------------------------------------------------------------------
# V
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class VElement:
    """Reduced tree pair with a leaf permutation: den leaf i -> num leaf perm[i]."""

    num: Tree
    den: Tree
    perm: tuple[int, ...]

    def __post_init__(self):
        n = self.num.leaves
        if n != self.den.leaves:
            raise ValueError("leaf counts differ")
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"perm is not a permutation of range({n})")
        if _v_cancellable(self.num, self.den, self.perm) is not None:
            raise ValueError("pair is not reduced")

    @classmethod
    def reduce(cls, num: Tree, den: Tree, perm: tuple[int, ...]) -> VElement:
        perm = list(perm)
        while True:
            hit = _v_cancellable(num, den, tuple(perm))
            if hit is None:
                return cls(num, den, tuple(perm))
            i0, j0 = hit
            den = collapse_caret(den, i0 + 1)
            num = collapse_caret(num, j0 + 1)
            perm = [
                img - 1 if img > j0 + 1 else img
                for t, img in enumerate(perm)
                if t != i0 + 1
            ]

    @classmethod
    def identity(cls) -> VElement:
        return cls(LEAF, LEAF, (0,))

    @property
    def leaves(self) -> int:
        return self.num.leaves

    def inverse(self) -> VElement:
        inv = [0] * self.leaves
        for i, j in enumerate(self.perm):
            inv[j] = i
        return VElement.reduce(self.den, self.num, tuple(inv))

    def __invert__(self) -> VElement:
        return self.inverse()

    def __mul__(self, other: VElement) -> VElement:
        if not isinstance(other, VElement):
            return NotImplemented
        _, p, q = common_refinement(self.den, other.num)
        a = _v_refine_den(self, p)
        b = _v_refine_num(other, q)
        assert a.den == b.num
        return VElement.reduce(a.num, b.den, tuple(a.perm[j] for j in b.perm))

    def __pow__(self, k: int) -> VElement:
        return _group_power(self, k, VElement.identity())

    def __str__(self) -> str:
        perm = " ".join(str(i) for i in self.perm)
        return f"{format_tree(self.num)}|{format_tree(self.den)}%{perm}"


@dataclass(frozen=True)
class _VPair:
    num: Tree
    den: Tree
    perm: tuple[int, ...]


def _v_cancellable(num: Tree, den: Tree, perm: tuple[int, ...]) -> tuple[int, int] | None:
    num_carets = set(caret_positions(num))
    for d1 in caret_positions(den):
        i0 = d1 - 1
        j0 = perm[i0]
        if perm[i0 + 1] == j0 + 1 and (j0 + 1) in num_carets:
            return i0, j0
    return None


def _block_perm(perm: tuple[int, ...], den_sizes: list[int], num_sizes: list[int]) -> tuple[int, ...]:
    """Refine perm so den block i maps order-preservingly onto num block perm[i]."""
    dstart = [0]
    for s in den_sizes:
        dstart.append(dstart[-1] + s)
    nstart = [0]
    for s in num_sizes:
        nstart.append(nstart[-1] + s)
    out = [0] * dstart[-1]
    for i, j in enumerate(perm):
        for t in range(den_sizes[i]):
            out[dstart[i] + t] = nstart[j] + t
    return tuple(out)


def _v_refine_den(el: VElement, p: Forest) -> _VPair:
    n = el.leaves
    inv = [0] * n
    for i, j in enumerate(el.perm):
        inv[j] = i
    p_num = tuple(p.trees[inv[j]] for j in range(n))
    den_sizes = [t.leaves for t in p.trees]
    num_sizes = [t.leaves for t in p_num]
    return _VPair(
        graft(el.num, p_num),
        apply_forest(el.den, p),
        _block_perm(el.perm, den_sizes, num_sizes),
    )


def _v_refine_num(el: VElement, q: Forest) -> _VPair:
    q_den = tuple(q.trees[el.perm[i]] for i in range(el.leaves))
    den_sizes = [t.leaves for t in q_den]
    num_sizes = [t.leaves for t in q.trees]
    return _VPair(
        apply_forest(el.num, q),
        graft(el.den, q_den),
        _block_perm(el.perm, den_sizes, num_sizes),
    )


# --------------------------------------------------------------------------
# Sampling and literals
# --------------------------------------------------------------------------


def random_element(leaf_bound: int, seed: int) -> FElement:
    """Reduced pair of two uniform trees with `leaf_bound` leaves each."""
    if leaf_bound < 2:
        raise ValueError("leaf_bound must be at least 2")
    return random_element_rng(leaf_bound, random.Random(seed))


def random_element_rng(leaf_bound: int, rng: random.Random) -> FElement:
    return FElement.reduce(random_tree(leaf_bound, rng), random_tree(leaf_bound, rng))


Element = FElement | TElement | VElement


def parse_element(text: str) -> Element:
    """Parse an element literal, reducing to normal form."""
    if "%" in text:
        head, _, tail = text.partition("%")
        pair = parse_pair(head)
        try:
            perm = tuple(int(w) for w in tail.split())
        except ValueError:
            raise LiteralError("permutation images must be integers", len(head) + 1) from None
        if sorted(perm) != list(range(pair.num.leaves)):
            raise LiteralError("not a permutation of the leaves", len(head) + 1)
        return VElement.reduce(pair.num, pair.den, perm)
    if "@" in text:
        head, _, tail = text.partition("@")
        pair = parse_pair(head)
        try:
            mark = int(tail)
        except ValueError:
            raise LiteralError("mark must be a decimal integer", len(head) + 1) from None
        return TElement.reduce(pair.num, pair.den, mark % pair.num.leaves)
    pair = parse_pair(text)
    return FElement.from_pair(pair)


def format_element(el: Element) -> str:
    return str(el)
