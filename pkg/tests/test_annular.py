"""Annular forest composition and rotation bookkeeping."""

from __future__ import annotations

import random

import pytest

from treefrac.annular import AnnularForest, annular_compose, parse_annular, rho, tau
from treefrac.trees import CompositionError, Forest, compose_forests, random_forest


def rand_annular(rng, roots, leaves):
    return AnnularForest(random_forest(roots, leaves, rng), rng.randrange(-6, 7))


def test_rotation_powers_add_up_to_tau():
    for n in (2, 3, 5):
        assert annular_compose(rho(n) ** (n - 1), rho(n)) == tau(n)
        assert rho(n) ** n == tau(n)


def test_rho_generates_infinite_cyclic_shifts():
    seen = {(rho(4) ** k).shift for k in range(12)}
    assert seen == set(range(12))


def test_shift_zero_forests_compose_as_plain_forests():
    rng = random.Random(3)
    for _ in range(30):
        a = random_forest(rng.randrange(1, 4), rng.randrange(4, 7), rng)
        b = random_forest(a.leaves, a.leaves + rng.randrange(0, 4), rng)
        out = annular_compose(AnnularForest.from_forest(a), AnnularForest.from_forest(b))
        assert out == AnnularForest.from_forest(compose_forests(a, b))


def test_full_turn_commutes_across_a_forest():
    # Rotating the leaf circle by a full turn equals rotating the root
    # circle by a full turn: tau_n . F == F . tau_m.
    rng = random.Random(9)
    for _ in range(50):
        m = rng.randrange(1, 5)
        n = m + rng.randrange(0, 5)
        f = rand_annular(rng, m, n)
        after_leaves = annular_compose(f, tau(n))
        after_roots = annular_compose(tau(m), f)
        assert after_leaves == after_roots
        assert after_leaves.shift == f.shift + n


def test_composition_is_associative():
    rng = random.Random(13)
    for _ in range(50):
        a = rand_annular(rng, rng.randrange(1, 4), rng.randrange(3, 6))
        b = rand_annular(rng, a.leaves, a.leaves + rng.randrange(0, 3))
        c = rand_annular(rng, b.leaves, b.leaves + rng.randrange(0, 3))
        assert annular_compose(annular_compose(a, b), c) == annular_compose(
            a, annular_compose(b, c)
        )


def test_arity_mismatch():
    with pytest.raises(CompositionError):
        annular_compose(rho(2), rho(3))


def test_normal_form_is_unique_data():
    a = AnnularForest(Forest.trivial(3), 4)
    b = AnnularForest(Forest.trivial(3), 1)
    assert a != b
    assert a == annular_compose(b, tau(3))


def test_literal_round_trip():
    a = parse_annular("(..),.@-3")
    assert a.shift == -3 and a.roots == 2 and a.leaves == 3
    assert parse_annular(str(a)) == a
