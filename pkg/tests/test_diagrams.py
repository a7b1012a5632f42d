"""Gluing tree pairs into closed trivalent planar diagrams."""

from __future__ import annotations

import random
from collections import Counter

from treefrac.diagrams import closed_graph
from treefrac.thompson import random_element_rng, x_generator
from treefrac.trees import LEAF, caret, random_tree


def test_identity_gives_a_free_loop():
    d = closed_graph((LEAF, LEAF))
    assert (d.vertex_count, d.edge_count, d.face_count) == (0, 0, 2)
    assert d.free_loops == 1
    assert d.euler_characteristic() == 2


def test_caret_pair_gives_theta():
    d = closed_graph((caret(), caret()))
    assert (d.vertex_count, d.edge_count, d.face_count) == (2, 3, 3)
    assert all(set(e) == {0, 1} for e in d.edges)
    # The dual of the theta graph is a triangle.
    dual = {frozenset(e) for e in d.dual_edges()}
    assert dual == {frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})}


def test_x0_gives_k4():
    d = closed_graph(x_generator(0))
    assert (d.vertex_count, d.edge_count, d.face_count) == (4, 6, 4)
    assert Counter(frozenset(e) for e in d.edges) == Counter(
        frozenset({u, v}) for u in range(4) for v in range(u + 1, 4)
    )
    # Self-dual: the dual is K4 again.
    dual = Counter(frozenset(e) for e in d.dual_edges())
    assert dual == Counter(frozenset({u, v}) for u in range(4) for v in range(u + 1, 4))


def test_glued_pairs_satisfy_euler_and_size_formulas():
    rng = random.Random(21)
    for _ in range(60):
        n = rng.randrange(2, 14)
        num, den = random_tree(n, rng), random_tree(n, rng)
        d = closed_graph((num, den))
        assert d.vertex_count == 2 * (n - 1)
        assert d.edge_count == 3 * (n - 1)
        assert d.face_count == n + 1
        assert d.euler_characteristic() == 2
        assert all(len(r) == 3 for r in d.rotations)


def test_reduced_elements_have_no_dual_self_loops():
    # Glued diagrams are bridgeless, so no face borders itself.
    rng = random.Random(22)
    for _ in range(40):
        g = random_element_rng(rng.randrange(2, 12), rng)
        if g.is_identity:
            continue
        assert all(u != v for u, v in closed_graph(g).dual_edges())
