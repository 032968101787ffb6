"""Acceptance criteria. All comparisons are exact integer equalities."""

from __future__ import annotations

import io
import itertools
import random
import time

import pytest
import sympy

from conftest import random_exchange_matrix
from qmgs.catalog import NAMES, get_quiver
from qmgs.cli import run
from qmgs.errors import SignCoherenceViolation
from qmgs.green import acyclic_source_sequence, is_maximal_green, search_mgs
from qmgs.matrix import ExchangeMatrix, mutate_matrix, mutate_matrix_form
from qmgs.obstruction import (
    CoordState,
    Outcome,
    certify_no_mgs,
    find_positive_radical,
    lemma6_check,
    radical_basis,
    update_coordinates,
    x7_form_check,
)
from qmgs.seed import YSeed, c_sign, initial_seed, mutate_seed, vector_sign

X7_U = (2, 1, 1, 1, 1, 1, 1)


def cli(argv):
    out = io.StringIO()
    return run(argv, out=out), out.getvalue()


def path_orientations(n):
    for signs in itertools.product((1, -1), repeat=n - 1):
        rows = [[0] * n for _ in range(n)]
        for i, s in enumerate(signs):
            rows[i][i + 1], rows[i + 1][i] = s, -s
        yield ExchangeMatrix(rows)


def independent_seed_check(seed):
    for v in seed.c:
        assert all(x >= 0 for x in v) or all(x <= 0 for x in v)
        assert any(v)
    assert abs(sympy.Matrix(seed.c).det()) == 1


def test_criterion_1_x7_certified(record_property):
    """criterion 1: certify -q x7 is Certified, class size 2, every state in X7 form, < 1 s"""
    t0 = time.perf_counter()
    code, out = cli(["certify", "-q", "x7"])
    cert = certify_no_mgs(get_quiver("x7"), X7_U)
    elapsed = time.perf_counter() - t0
    record_property("seconds", f"{elapsed:.3f}")
    assert code == 0
    assert "outcome: Certified" in out.splitlines()
    assert "class_size: 2" in out.splitlines()
    assert cert.outcome is Outcome.CERTIFIED and cert.class_size == 2
    assert all(x7_form_check(s) for s in cert.states)
    assert elapsed < 1.0


def test_criterion_2_form_preserved_on_random_walks(record_property):
    """criterion 2: 1000 random walks of length <= 20 from x7 keep the X7 form, < 5 s"""
    rng = random.Random(2)
    x7 = get_quiver("x7")
    checked = 0
    t0 = time.perf_counter()
    for _ in range(1000):
        seed = initial_seed(x7)
        a = X7_U
        for _ in range(rng.randint(1, 20)):
            k = rng.randrange(7)
            a = update_coordinates(seed.B, a, k, c_sign(seed, k))
            seed = mutate_seed(seed, k)
            assert x7_form_check(CoordState(seed.B, a))
            checked += 1
    elapsed = time.perf_counter() - t0
    record_property("states_checked", checked)
    record_property("seconds", f"{elapsed:.2f}")
    assert elapsed < 5.0


def test_criterion_3_bounded_green_search(record_property):
    """criterion 3: search_mgs(x7, max_len=10, all) finds no MGS and reaches no all-red seed, < 60 s"""
    t0 = time.perf_counter()
    out = search_mgs(get_quiver("x7"), 10, "all")
    elapsed = time.perf_counter() - t0
    record_property("nodes_expanded", out.nodes)
    record_property("memo_hits", out.memo_hits)
    record_property("seconds", f"{elapsed:.1f}")
    # an all-red seed reached by green moves is exactly an MGS endpoint
    assert out.found == []
    assert not out.errors
    assert elapsed < 60.0


def test_criterion_4_markov_control(record_property):
    """criterion 4: certify -q markov --vector 1,1,1 is Certified with the single orbit {(1,1,1)}"""
    code, out = cli(["certify", "-q", "markov", "--vector", "1,1,1"])
    assert code == 0
    assert "outcome: Certified" in out.splitlines()
    assert [l for l in out.splitlines() if l.startswith("coordinates:")] == ["coordinates: 1,1,1"]
    cert = certify_no_mgs(get_quiver("markov"), (1, 1, 1))
    assert {s.a for s in cert.states} == {(1, 1, 1)}


def test_criterion_5_positive_controls(record_property):
    """criterion 5: source sequences are MGS for every orientation of A2, A3, A4; A2 has exactly {(2,1),(1,2,1)}"""
    count = 0
    for n in (2, 3, 4):
        for B in path_orientations(n):
            seq = acyclic_source_sequence(B)
            assert seq is not None and is_maximal_green(B, seq)
            count += 1
    for name in ("a2", "a3", "a4"):
        assert is_maximal_green(get_quiver(name), acyclic_source_sequence(get_quiver(name)))
    record_property("orientations", count)
    out = search_mgs(get_quiver("a2"), 5, "all")
    assert out.exhausted
    assert {tuple(k + 1 for k in s) for s in out.found} == {(2, 1), (1, 2, 1)}


def test_criterion_6_formula_cross_validation(record_property):
    """criterion 6: entrywise and matrix-form mutation agree (both signs), and mutation is an involution"""
    rng = random.Random(6)
    randoms = [random_exchange_matrix(rng, rng.randint(1, 6), bound=3, max_d=3) for _ in range(1000)]
    assert all(abs(x) <= 3 for B in randoms for x in B.flat())
    corpus = [get_quiver(n) for n in NAMES] + randoms
    comparisons = 0
    for B in corpus:
        for k in range(B.n):
            mu = mutate_matrix(B, k)
            assert mutate_matrix_form(B, k, 1) == mu
            assert mutate_matrix_form(B, k, -1) == mu
            assert mutate_matrix(mu, k) == B
            comparisons += 1
    record_property("matrices", len(corpus))
    record_property("skew_symmetrizable_only", sum(not B.is_skew_symmetric for B in corpus))
    record_property("comparisons", comparisons)


def test_criterion_7_coordinate_dynamics_oracle(record_property):
    """criterion 7: iterated coordinate updates equal direct basis-change coordinates on >= 100 green walks"""
    rng = random.Random(7)
    walks = steps = 0
    for name in NAMES:
        B = get_quiver(name)
        u0 = find_positive_radical(B) or tuple(rng.randint(1, 4) for _ in range(B.n))
        for _ in range(20):
            seed, a = initial_seed(B), u0
            for _ in range(rng.randint(1, 8)):
                greens = seed.green_vertices()
                if not greens:
                    break
                k = rng.choice(greens)
                a = update_coordinates(seed.B, a, k, c_sign(seed, k))
                seed = mutate_seed(seed, k)
                direct = sympy.Matrix(seed.c).T.LUsolve(sympy.Matrix(u0))
                assert a == tuple(int(x) for x in direct)
                assert all(x.is_integer for x in direct)
                steps += 1
            walks += 1
    record_property("walks", walks)
    record_property("steps", steps)
    assert walks >= 100


def test_criterion_8_radical_invariants(record_property):
    """criterion 8: balanced coordinate sums for every catalog radical vector and k; B a = 0 on every certifier transition"""
    pairs = 0
    for name in NAMES:
        B = get_quiver(name)
        for v in radical_basis(B):
            for k in range(B.n):
                assert lemma6_check(B, v, k)
                pairs += 1
    transitions = 0
    runs = [("x7", X7_U), ("x7b", (1,) * 7), ("markov", (1, 1, 1)), ("cycle3", (1, 1, 1))]
    for name, u in runs:
        cert = certify_no_mgs(get_quiver(name), u)
        for st in cert.states:
            assert st.is_radical()
            for k in range(st.B.n):
                a = update_coordinates(st.B, st.a, k, 1)
                assert a == update_coordinates(st.B, st.a, k, -1)
                assert not any(mutate_matrix(st.B, k).matvec(a))
                transitions += 1
    record_property("radical_pairs", pairs)
    record_property("transitions", transitions)
    assert pairs > 0


def test_criterion_9_seed_invariants(record_property):
    """criterion 9: sign coherence and |det C| = 1 after every mutation; bad seeds are rejected"""
    A2 = get_quiver("a2")
    with pytest.raises(SignCoherenceViolation):
        YSeed(((1, -1), (0, 1)), A2)
    with pytest.raises(SignCoherenceViolation):
        YSeed(((2, 0), (0, 1)), A2)
    rng = random.Random(9)
    mutations = 0
    for name in NAMES:
        B = get_quiver(name)
        for _ in range(30):
            seed = initial_seed(B)
            independent_seed_check(seed)
            for _ in range(rng.randint(1, 12)):
                seed = mutate_seed(seed, rng.randrange(B.n))
                independent_seed_check(seed)
                assert all(vector_sign(v) in (1, -1) for v in seed.c)
                mutations += 1
    record_property("mutations", mutations)
