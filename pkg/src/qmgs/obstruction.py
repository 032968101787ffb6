"""Radical-vector obstruction to maximal green sequences.

If ``B0 u0 = 0`` for some strictly positive ``u0`` and the coordinates of
``u0`` stay non-negative in the c-vector basis of every Y-seed, then no
matrix in the mutation class of ``B0`` has a maximal green sequence. For a
radical vector the coordinate update under mutation does not depend on the
c-vectors, so the coordinates evolve as a function of ``(B, a)`` alone and
the hypothesis can be checked on the finite closure of such pairs.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence

from .catalog import get_quiver, serialize_matrix
from .errors import MutationOverflowError, NotInClass, PreconditionFailed
from .green import COHERENCE_WARNING
from .matrix import (
    ExchangeMatrix,
    automorphisms,
    are_isomorphic,
    canonical_labelling,
    checked,
    mutate_matrix,
    pos,
)
from .seed import YSeed

log = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 10_000


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd(*v)
    v = [x // g for x in v] if g else list(v)
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return tuple(v)


def radical_basis(B: ExchangeMatrix) -> list[tuple[int, ...]]:
    """Basis of ``ker B`` made of primitive integer vectors.

    Integer row reduction (each row divided by its content after every
    elimination step) to reduced echelon form; one vector per free column,
    scaled to be primitive with its first nonzero entry positive. Empty for
    nonsingular ``B``.
    """
    n = B.n
    m = [list(r) for r in B.entries]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        p = next((r for r in range(row, n) if m[r][col] != 0), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        prow = m[row]
        for r in range(n):
            if r == row or m[r][col] == 0:
                continue
            f, g = prow[col], m[r][col]
            new = [checked(f * x - g * y) for x, y in zip(m[r], prow)]
            c = gcd(*new)
            m[r] = [x // c for x in new] if c else new
        pivots.append((row, col))
        row += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        scale = lcm(*(m[r][c] for r, c in pivots)) if pivots else 1
        v = [0] * n
        v[free] = scale
        for r, c in pivots:
            v[c] = -m[r][free] * scale // m[r][c]
        basis.append(_primitive(v))
    return basis


def find_positive_radical(B: ExchangeMatrix) -> tuple[int, ...] | None:
    """The strictly positive primitive radical vector when ``ker B`` is a line.

    Returns ``None`` if the kernel is zero, if its generator has mixed
    signs or zeros, or if the kernel has dimension two or more (then a
    vector has to be supplied explicitly).
    """
    basis = radical_basis(B)
    if len(basis) != 1:
        if len(basis) > 1:
            log.warning("kernel has dimension %d; supply a positive radical vector explicitly", len(basis))
        return None
    v = basis[0]
    if all(x > 0 for x in v):
        return v
    if all(x < 0 for x in v):
        return tuple(-x for x in v)
    return None


def update_coordinates(B: ExchangeMatrix, a: Sequence[int], k: int, eps: int) -> tuple[int, ...]:
    """Coordinates of a fixed vector after mutating at ``k``.

    ``a'_i = a_i`` for ``i != k`` and
    ``a'_k = -a_k + sum_{i != k} a_i [eps * B[k][i]]_+``, where ``eps``
    is the sign of the c-vector at ``k`` before mutation.
    """
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    row = B.entries[k]
    s = sum(x * pos(eps * row[i]) for i, x in enumerate(a) if i != k)
    out = list(a)
    out[k] = checked(s - a[k])
    return tuple(out)


def lemma6_check(B: ExchangeMatrix, a: Sequence[int], k: int) -> bool:
    """Whether the positive and negative parts of row ``k`` weigh ``a`` equally.

    Holds for every ``k`` when ``a`` is radical for ``B``; it is exactly the
    condition under which :func:`update_coordinates` ignores ``eps``.
    """
    row = B.entries[k]
    plus = sum(x * pos(row[i]) for i, x in enumerate(a) if i != k)
    minus = sum(x * pos(-row[i]) for i, x in enumerate(a) if i != k)
    return plus == minus


def coordinates_in_basis(seed: YSeed, u: Sequence[int]) -> tuple[int, ...]:
    """Solve ``sum_i a_i c_i = u`` exactly for the c-vector basis of ``seed``."""
    n = seed.n
    # columns of the system are the c-vectors
    m = [[Fraction(seed.c[j][i]) for j in range(n)] + [Fraction(u[i])] for i in range(n)]
    for col in range(n):
        p = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[p] = m[p], m[col]
        piv = m[col][col]
        m[col] = [x / piv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    sol = [m[i][n] for i in range(n)]
    if any(x.denominator != 1 for x in sol):
        raise ArithmeticError("c-vectors are not a Z-basis: non-integral coordinates")
    return tuple(int(x) for x in sol)


@dataclass(frozen=True)
class CoordState:
    """An exchange matrix with the coordinates ``a`` of a fixed radical vector."""

    B: ExchangeMatrix
    a: tuple[int, ...]

    def is_radical(self) -> bool:
        return all(x == 0 for x in self.B.matvec(self.a))

    def joint_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Joint canonical form: one relabelling applied to both ``B`` and ``a``."""
        sigma = canonical_labelling(self.B, labels=self.a)
        B = self.B.permute(sigma)
        a = [0] * len(self.a)
        for i, x in enumerate(self.a):
            a[sigma(i)] = x
        return B.flat(), tuple(a)


class Outcome(enum.Enum):
    CERTIFIED = "Certified"
    VIOLATION_FOUND = "ViolationFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Certificate:
    """Result of :func:`certify_no_mgs`.

    ``states`` holds one representative per explored state in the original
    vertex labelling; ``paths`` the mutation sequence (0-based) reaching
    each. ``witness`` is set for ``ViolationFound``.
    """

    outcome: Outcome
    states_explored: int
    class_size: int
    limits: dict[str, int]
    states: list[CoordState] = field(default_factory=list)
    paths: list[tuple[int, ...]] = field(default_factory=list)
    witness: tuple[tuple[int, ...], CoordState] | None = None
    cause: str = ""
    warnings: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.outcome is Outcome.CERTIFIED

    def classes(self) -> dict[ExchangeMatrix, list[tuple[int, ...]]]:
        """Canonical exchange matrices seen, each with its coordinate vectors.

        Coordinates are written in the canonical labelling, taking the
        lexicographically smallest image under automorphisms of the
        canonical matrix so the listing does not depend on search order.
        """
        out: dict[ExchangeMatrix, set[tuple[int, ...]]] = {}
        for st in self.states:
            sigma = canonical_labelling(st.B)
            canon = st.B.permute(sigma)
            a = [0] * len(st.a)
            for i, x in enumerate(st.a):
                a[sigma(i)] = x
            best = min(tuple(a[tau.inverse()(i)] for i in range(len(a))) for tau in _automorphisms(canon))
            out.setdefault(canon, set()).add(best)
        return {B: sorted(out[B]) for B in sorted(out, key=lambda M: M.flat())}

    def to_text(self) -> str:
        lines = [f"outcome: {self.outcome.value}"]
        lines.append(f"states_explored: {self.states_explored}")
        lines.append(f"class_size: {self.class_size}")
        lines.append("limits: " + " ".join(f"{k}={v}" for k, v in sorted(self.limits.items())))
        if self.cause:
            lines.append(f"cause: {self.cause}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for idx, (B, coords) in enumerate(self.classes().items(), start=1):
            lines.append(f"class {idx}")
            lines.extend(serialize_matrix(B).splitlines())
            lines.extend("coordinates: " + ",".join(map(str, a)) for a in coords)
        if self.witness is not None:
            path, st = self.witness
            lines.append("witness: " + ",".join(str(k + 1) for k in path))
            lines.append("witness_coordinates: " + ",".join(map(str, st.a)))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=4096)
def _automorphisms(B: ExchangeMatrix):
    return automorphisms(B)


def certify_no_mgs(
    B0: ExchangeMatrix, u0: Sequence[int], max_states: int = DEFAULT_MAX_STATES
) -> Certificate:
    """Try to certify that no matrix mutation-equivalent to ``B0`` has a maximal green sequence.

    Breadth-first closure of coordinate states starting at ``(B0, u0)``.
    Each state ``(B, a)`` goes to ``(mu_k(B), update_coordinates(B, a, k, eps))``
    for every ``k``; both signs of ``eps`` are computed and required to
    agree, and every state is required to satisfy ``B a = 0``. States are
    identified up to a joint relabelling of ``B`` and ``a``.

    Returns a :class:`Certificate` whose outcome is

    * ``Certified`` when the closure is finite and every coordinate is
      non-negative;
    * ``ViolationFound`` when some state has a negative coordinate; the
      witness is the lexicographically smallest path among the shallowest
      violations found;
    * ``Inconclusive`` when ``max_states`` is exceeded or an entry
      overflows 64 bits.

    Raises
    ------
    PreconditionFailed
        If ``u0`` is not strictly positive or not radical for ``B0``.
    """
    u0 = tuple(int(x) for x in u0)
    if len(u0) != B0.n:
        raise PreconditionFailed(f"vector has length {len(u0)}, matrix has rank {B0.n}")
    if not all(x > 0 for x in u0):
        raise PreconditionFailed(f"vector {u0} is not strictly positive")
    if any(B0.matvec(u0)):
        raise PreconditionFailed(f"vector {u0} is not radical: B u = {B0.matvec(u0)}")
    if max_states < 1:
        raise ValueError("max_states must be >= 1")

    limits = {"max_states": max_states}
    warnings = [] if B0.is_skew_symmetric else [COHERENCE_WARNING]
    start = CoordState(B0, u0)
    seen = {start.joint_key(): 0}
    states = [start]
    paths: list[tuple[int, ...]] = [()]
    queue = deque([0])

    def finish(outcome: Outcome, **kw) -> Certificate:
        canon = {st.B.permute(canonical_labelling(st.B)) for st in states}
        return Certificate(outcome, len(states), len(canon), limits, states, paths, warnings=warnings, **kw)

    while queue:
        idx = queue.popleft()
        st, path = states[idx], paths[idx]
        for k in range(st.B.n):
            try:
                a_plus = update_coordinates(st.B, st.a, k, 1)
                a_minus = update_coordinates(st.B, st.a, k, -1)
                B1 = mutate_matrix(st.B, k)
            except MutationOverflowError as exc:
                return finish(Outcome.INCONCLUSIVE, cause=f"overflow: {exc}")
            if a_plus != a_minus:
                raise AssertionError(f"coordinate update depends on the sign at {path + (k,)}: {a_plus} != {a_minus}")
            nxt = CoordState(B1, a_plus)
            if not nxt.is_radical():
                raise AssertionError(f"radical vector lost at {path + (k,)}: {nxt.a}")
            key = nxt.joint_key()
            if key in seen:
                continue
            if len(states) >= max_states:
                return finish(Outcome.INCONCLUSIVE, cause=f"more than {max_states} states")
            seen[key] = len(states)
            states.append(nxt)
            paths.append(path + (k,))
            if any(x < 0 for x in nxt.a):
                return finish(Outcome.VIOLATION_FOUND, witness=(path + (k,), nxt))
            queue.append(len(states) - 1)
    return finish(Outcome.CERTIFIED)


@lru_cache(maxsize=None)
def _x7_member(B: ExchangeMatrix) -> tuple[str, int | None]:
    sigma = are_isomorphic(get_quiver("x7"), B)
    if sigma is not None:
        # vertex 0 of the catalog X7 is its center
        return "x7", sigma(0)
    if are_isomorphic(get_quiver("x7b"), B) is not None:
        return "x7b", None
    raise NotInClass("exchange matrix is not in the mutation class of X7")


def x7_form_check(state: CoordState) -> bool:
    """Whether ``state`` has the coordinate pattern of the X7 class.

    For a matrix isomorphic to X7: 2 at the image of the center and 1
    elsewhere. For the other class member: all ones.

    Raises
    ------
    NotInClass
        If ``state.B`` is not in the X7 mutation class.
    """
    if state.B.n != 7:
        raise NotInClass(f"rank {state.B.n} matrix is not in the mutation class of X7")
    which, center = _x7_member(state.B)
    if which == "x7":
        return all(x == (2 if i == center else 1) for i, x in enumerate(state.a))
    return all(x == 1 for x in state.a)
