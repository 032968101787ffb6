from __future__ import annotations

import random
from math import lcm

import pytest
from hypothesis import strategies as st

from qmgs.catalog import NAMES, get_quiver
from qmgs.matrix import ExchangeMatrix

_ACCEPTANCE: list[tuple[str, str, list]] = []


def random_exchange_matrix(rng: random.Random, n: int, bound: int = 3, max_d: int = 2) -> ExchangeMatrix:
    """Random skew-symmetrizable matrix with entries in [-bound, bound].

    Picks a diagonal D, then for each pair a multiple of lcm(d_i, d_j) for
    the skew-symmetric product D B, rejecting pairs that leave the bound.
    """
    d = [rng.randint(1, max_d) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = lcm(d[i], d[j])
            t = rng.randint(-bound, bound)
            bij, bji = t * m // d[i], -t * m // d[j]
            if abs(bij) > bound or abs(bji) > bound:
                continue
            rows[i][j], rows[j][i] = bij, bji
    return ExchangeMatrix(rows)


@st.composite
def exchange_matrices(draw, min_n: int = 1, max_n: int = 6, bound: int = 3, skew_symmetric: bool = False):
    n = draw(st.integers(min_n, max_n))
    d = [1] * n if skew_symmetric else draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = lcm(d[i], d[j])
            top = bound * min(d[i], d[j]) // m
            t = draw(st.integers(-top, top))
            rows[i][j], rows[j][i] = t * m // d[i], -t * m // d[j]
    return ExchangeMatrix(rows)


@pytest.fixture(params=NAMES)
def catalog_matrix(request) -> ExchangeMatrix:
    return get_quiver(request.param)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((doc, rep.outcome.upper(), item.user_properties))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, outcome, props in _ACCEPTANCE:
        extra = ", ".join(f"{k}={v}" for k, v in props)
        terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'} {doc}" + (f" [{extra}]" if extra else ""))
