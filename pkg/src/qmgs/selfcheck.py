"""Invariant self-test run by ``qmgs check`` on a single exchange matrix."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import QMGSError
from .matrix import (
    ExchangeMatrix,
    are_isomorphic,
    canonical_form,
    find_symmetrizer,
    mutate_matrix,
    mutate_matrix_form,
    CANONICAL_MAX_N,
)
from .obstruction import coordinates_in_basis, find_positive_radical, lemma6_check, update_coordinates
from .seed import c_sign, initial_seed, mutate_seed


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _symmetrizer(B: ExchangeMatrix, rng) -> str:
    d = find_symmetrizer(B.entries)
    n = B.n
    if any(d[i] * B[i, j] != -d[j] * B[j, i] for i in range(n) for j in range(n)):
        return f"D = {d} does not symmetrize"
    for k in range(n):
        if not mutate_matrix(B, k).symmetrizes(d):
            return f"D = {d} lost under mutation at {k + 1}"
    return ""


def _involution(B: ExchangeMatrix, rng) -> str:
    for k in range(B.n):
        if mutate_matrix(mutate_matrix(B, k), k) != B:
            return f"mu_{k + 1} is not an involution"
    return ""


def _matrix_form(B: ExchangeMatrix, rng) -> str:
    for k in range(B.n):
        mu = mutate_matrix(B, k)
        for eps in (1, -1):
            if mutate_matrix_form(B, k, eps) != mu:
                return f"matrix form differs at k={k + 1}, eps={eps:+d}"
    return ""


def _canonical(B: ExchangeMatrix, rng) -> str:
    if B.n > CANONICAL_MAX_N:
        return ""
    canon = canonical_form(B)
    for _ in range(10):
        perm = list(range(B.n))
        rng.shuffle(perm)
        P = B.permute(perm)
        if canonical_form(P) != canon or are_isomorphic(B, P) is None:
            return f"canonical form not invariant under relabelling {[p + 1 for p in perm]}"
    if canonical_form(canon) != canon:
        return "canonical form not idempotent"
    return ""


class _Walks:
    def __init__(self, walks: int, length: int):
        self.walks = walks
        self.length = length

    def __call__(self, B: ExchangeMatrix, rng) -> str:
        u0 = find_positive_radical(B)
        for w in range(self.walks):
            seed = initial_seed(B)
            a = u0
            for _ in range(rng.randint(1, self.length)):
                k = rng.randrange(B.n)
                nxt = mutate_seed(seed, k)  # sign coherence and unimodularity checked here
                if mutate_seed(nxt, k) != seed:
                    return f"seed mutation not involutive along {[i + 1 for i in nxt.path]}"
                if u0 is not None:
                    if not all(lemma6_check(seed.B, a, i) for i in range(B.n)):
                        return f"coordinate sums unbalanced along {[i + 1 for i in seed.path]}"
                    a = update_coordinates(seed.B, a, k, c_sign(seed, k))
                    if any(nxt.B.matvec(a)):
                        return f"coordinates not radical along {[i + 1 for i in nxt.path]}"
                    if a != coordinates_in_basis(nxt, u0):
                        return f"coordinate update disagrees with basis change along {[i + 1 for i in nxt.path]}"
                seed = nxt
        return ""


def run_checks(B: ExchangeMatrix, walks: int = 100, walk_len: int = 12, rng_seed: int = 0) -> list[CheckResult]:
    """Run every invariant check on ``B``; random walks are reproducible from ``rng_seed``."""
    rng = random.Random(rng_seed)
    checks: Sequence[tuple[str, Callable]] = [
        ("symmetrizer", _symmetrizer),
        ("involution", _involution),
        ("matrix-form", _matrix_form),
        ("canonical-form", _canonical),
        ("seed-walks", _Walks(walks, walk_len)),
    ]
    results = []
    for name, fn in checks:
        try:
            detail = fn(B, rng)
        except (QMGSError, ArithmeticError, AssertionError) as exc:
            detail = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, not detail, detail))
    return results
