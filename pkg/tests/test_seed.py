from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exchange_matrices
from qmgs.catalog import NAMES, get_quiver
from qmgs.errors import SignCoherenceViolation
from qmgs.matrix import ExchangeMatrix, mutate_matrix
from qmgs.seed import (
    VertexColor,
    YSeed,
    c_sign,
    determinant,
    initial_seed,
    mutate_seed,
    vector_sign,
    vertex_color,
)

A2 = ExchangeMatrix([[0, 1], [-1, 0]])


def test_initial_seed():
    s = initial_seed(A2)
    assert s.c == ((1, 0), (0, 1))
    assert s.colors() == "GG"
    assert determinant(s.c) == 1


@pytest.mark.parametrize("v, sign", [((0, 2, 1), 1), ((-1, -1), -1), ((0, 0, -3), -1)])
def test_vector_sign(v, sign):
    assert vector_sign(v) == sign


@pytest.mark.parametrize("v", [(1, -1), (0, 0), (2, 0, -1)])
def test_vector_sign_violation(v):
    with pytest.raises(SignCoherenceViolation):
        vector_sign(v)


def test_construction_rejects_mixed_signs():
    with pytest.raises(SignCoherenceViolation):
        YSeed(((1, -1), (0, 1)), A2)


def test_construction_rejects_non_basis():
    with pytest.raises(SignCoherenceViolation, match="det = 2"):
        YSeed(((2, 0), (0, 1)), A2)


def test_mutate_a2_at_1():
    s = mutate_seed(initial_seed(A2), 0)
    assert s.c == ((-1, 0), (1, 1))
    assert s.B.tolist() == [[0, -1], [1, 0]]
    assert vertex_color(s, 0) is VertexColor.RED
    assert vertex_color(s, 1) is VertexColor.GREEN
    assert s.path == (0,)


def test_mutate_a2_at_2():
    s = mutate_seed(initial_seed(A2), 1)
    assert s.c == ((1, 0), (0, -1))


def test_a2_maximal_endpoint():
    s = mutate_seed(mutate_seed(initial_seed(A2), 1), 0)
    assert s.colors() == "RR"
    assert s.all_red()
    assert c_sign(s, 0) == c_sign(s, 1) == -1


@pytest.mark.parametrize("name", NAMES)
def test_seed_involution_on_catalog(name):
    B = get_quiver(name)
    rng = random.Random(name)
    for _ in range(20):
        s = initial_seed(B)
        for _ in range(rng.randint(0, 8)):
            s = mutate_seed(s, rng.randrange(B.n))
        for k in range(B.n):
            t = mutate_seed(s, k)
            assert mutate_seed(t, k) == s
            assert t.B == mutate_matrix(s.B, k)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_sympy(rows):
    assert determinant(rows) == sympy.Matrix(rows).det()


@settings(max_examples=40, deadline=None)
@given(exchange_matrices(max_n=5, skew_symmetric=True), st.lists(st.integers(0, 4), max_size=10))
def test_walk_invariants_skew_symmetric(B, steps):
    s = initial_seed(B)
    for k in steps:
        s = mutate_seed(s, k % B.n)
        # construction already checks these; recheck with an independent determinant
        assert all(vector_sign(v) in (1, -1) for v in s.c)
        assert abs(sympy.Matrix(s.c).det()) == 1
    assert s.coherence_proven


def test_skew_symmetrizable_regime_flag():
    B = ExchangeMatrix([[0, 1], [-2, 0]])
    s = mutate_seed(initial_seed(B), 0)
    assert not s.coherence_proven


def test_violation_carries_path():
    with pytest.raises(SignCoherenceViolation) as exc:
        YSeed(((1, -1), (0, 1)), A2, path=(0, 1))
    assert exc.value.path == (0, 1)
    assert "[0, 1]" in str(exc.value)
