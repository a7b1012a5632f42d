"""Partition-function values of closed diagrams via colorings.

Three evaluations of the same closed diagram:

- edge_coloring_count: proper edge colorings (the three edge colors at
  every vertex pairwise distinct).  For 3 colors this is computed through
  the classical correspondence with proper 4-colorings of the faces:
  #edge-3-colorings = (proper 4-face-colorings) / 4 for connected plane
  cubic graphs, both sides vanishing exactly when a bridge is present.
- face_coloring_count: proper n-colorings of the map (faces sharing an
  edge receive distinct colors) = chromatic value of the dual multigraph.
- chromatic_value: the closed-diagram value in the quotient planar
  algebra with loop parameter d, namely
      (d-1)^(-V/2) * chi_dual(d+1) / (d+1),
  calibrated so a single loop and the theta graph both evaluate to d and
  any diagram with a bridge (tadpole stem) evaluates to 0.

The chromatic engine is deletion-contraction on multigraphs (a self-loop
forces 0, parallel edges collapse), memoized per call on relabeled edge
sets, and evaluates at any exact scalar q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagrams import ClosedDiagram, closed_graph
from .thompson import FElement

#: Loop value and unitarity constant of the 3-dimensional vertex model
#: behind the edge-3-coloring count (see treefrac.tensors for the checks).
EDGE3_LOOP_VALUE = 3
EDGE3_UNITARITY = 2


def count_proper_colorings(vertices, edges, q):
    """Chromatic value chi_G(q) of a multigraph, exact in q.

    `vertices` is an iterable of hashable vertex names, `edges` an
    iterable of (u, v) pairs; parallel edges are collapsed and a loop
    makes the count zero.
    """
    vs = frozenset(vertices)
    simple = set()
    for u, v in edges:
        if u == v:
            return 0 * q
        simple.add(frozenset((u, v)))
    memo: dict = {}
    return _chromatic(vs, frozenset(simple), q, memo)


def _canonical(vertices, edges):
    rank = {v: i for i, v in enumerate(sorted(vertices))}
    return (
        len(vertices),
        frozenset(frozenset(rank[w] for w in e) for e in edges),
    )


def _chromatic(vertices, edges, q, memo):
    if not edges:
        return q ** len(vertices)
    key = _canonical(vertices, edges)
    if key in memo:
        return memo[key]

    degree = {v: 0 for v in vertices}
    for e in edges:
        for v in e:
            degree[v] += 1

    isolated = {v for v, d in degree.items() if d == 0}
    if isolated:
        value = q ** len(isolated) * _chromatic(vertices - isolated, edges, q, memo)
        memo[key] = value
        return value

    pendant = next((v for v, d in degree.items() if d == 1), None)
    if pendant is not None:
        rest = frozenset(e for e in edges if pendant not in e)
        value = (q - 1) * _chromatic(vertices - {pendant}, rest, q, memo)
        memo[key] = value
        return value

    component = _component(vertices, edges)
    if len(component) < len(vertices):
        inside = frozenset(e for e in edges if e <= component)
        outside = edges - inside
        value = _chromatic(component, inside, q, memo) * _chromatic(
            vertices - component, outside, q, memo
        )
        memo[key] = value
        return value

    # Deletion-contraction on an edge at a maximum-degree vertex.
    u = max(vertices, key=lambda v: (degree[v], v))
    edge = next(e for e in edges if u in e)
    (v,) = edge - {u}
    deleted = _chromatic(vertices, edges - {edge}, q, memo)
    contracted_edges = set()
    for e in edges - {edge}:
        f = frozenset(u if w == v else w for w in e)
        if len(f) == 2:
            contracted_edges.add(f)
    contracted = _chromatic(vertices - {v}, frozenset(contracted_edges), q, memo)
    value = deleted - contracted
    memo[key] = value
    return value


def _component(vertices, edges):
    start = next(iter(vertices))
    seen = {start}
    frontier = [start]
    adj: dict = {v: [] for v in vertices}
    for e in edges:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def _dual_chromatic(diagram: ClosedDiagram, q):
    return count_proper_colorings(
        range(diagram.face_count), diagram.dual_edges(), q
    )


def edge_coloring_count(diagram: ClosedDiagram, colors: int = 3) -> int:
    """Number of proper edge colorings with the given palette."""
    if colors < 3:
        raise ValueError("need at least 3 colors at a trivalent vertex")
    factor = colors**diagram.free_loops
    if diagram.vertex_count == 0:
        return factor
    if colors == 3:
        tait = _dual_chromatic(diagram, 4)
        assert tait % 4 == 0
        return factor * (tait // 4)
    return factor * _edge_coloring_backtrack(diagram, colors)


def _edge_coloring_backtrack(diagram: ClosedDiagram, colors: int) -> int:
    incident = [[] for _ in range(diagram.vertex_count)]
    for e, (u, v) in enumerate(diagram.edges):
        incident[u].append(e)
        incident[v].append(e)
    assignment = [-1] * diagram.edge_count

    def conflicts(e, c):
        u, v = diagram.edges[e]
        return any(
            assignment[f] == c for w in (u, v) for f in incident[w] if f != e
        )

    def walk(e):
        if e == diagram.edge_count:
            return 1
        total = 0
        for c in range(colors):
            if not conflicts(e, c):
                assignment[e] = c
                total += walk(e + 1)
                assignment[e] = -1
        return total

    return walk(0)


def face_coloring_count(diagram: ClosedDiagram, n: int) -> int:
    """Number of proper n-colorings of the map defined by the diagram."""
    return _dual_chromatic(diagram, n)


def chromatic_value(diagram: ClosedDiagram, d: Fraction) -> Fraction:
    """Value of the closed diagram in the loop-parameter-d planar algebra."""
    d = Fraction(d)
    if d == 1:
        raise ValueError("the evaluation is singular at d = 1")
    chi = _dual_chromatic(diagram, d + 1)
    return chi / (d + 1) / (d - 1) ** (diagram.vertex_count // 2)


def coefficient(g, model: str = "edge3") -> Fraction:
    """Vacuum coefficient of a group element in the stated model.

    "edge3" is the 3-coloring vertex model: the edge-coloring count of the
    glued diagram, divided by the loop value 3 and by the unitarity
    constant 2 once per pair of vertices.  The value is invariant under
    un-reduction of the pair, equals 1 on the identity, and is bounded by
    1 in absolute value.
    """
    if model != "edge3":
        raise ValueError(f"unknown model {model!r}")
    diagram = closed_graph(g)
    count = edge_coloring_count(diagram, 3)
    return Fraction(
        count, EDGE3_LOOP_VALUE * EDGE3_UNITARITY ** (diagram.vertex_count // 2)
    )


def face_coefficient(g, n: int = 3) -> Fraction:
    """Face-model coefficient: the n-coloring count of the map over n."""
    return Fraction(face_coloring_count(closed_graph(g), n), n)


@dataclass(frozen=True)
class Value2Report:
    sample_size: int
    counts_seen: tuple[int, ...]
    counts_ok: bool
    member_count: int
    products_checked: int
    closure_ok: bool
    inverses_ok: bool

    @property
    def ok(self) -> bool:
        return self.counts_ok and self.closure_ok and self.inverses_ok


def value2_subgroup_test(sample: list[FElement], max_products: int = 200) -> Value2Report:
    """Check the face-model value-2 locus behaves like a subgroup.

    Face counts at n = 3 must lie in {0, 6}; elements of face-coefficient
    2 must be closed under inverse and (pairwise, up to max_products)
    under multiplication.
    """
    counts = {g: face_coloring_count(closed_graph(g), 3) for g in sample}
    counts_ok = all(c in (0, 6) for c in counts.values())
    members = [g for g, c in counts.items() if c == 6]
    inverses_ok = all(
        face_coloring_count(closed_graph(~g), 3) == 6 for g in members
    )
    checked = 0
    closure_ok = True
    for a in members:
        for b in members:
            if checked >= max_products:
                break
            checked += 1
            if face_coloring_count(closed_graph(a * b), 3) != 6:
                closure_ok = False
        if checked >= max_products or not closure_ok:
            break
    return Value2Report(
        sample_size=len(sample),
        counts_seen=tuple(sorted(set(counts.values()))),
        counts_ok=counts_ok,
        member_count=len(members),
        products_checked=checked,
        closure_ok=closure_ok,
        inverses_ok=inverses_ok,
    )
