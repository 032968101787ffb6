"""Y-seeds: c-vector tuples paired with an exchange matrix."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import SignCoherenceViolation
from .matrix import ExchangeMatrix, checked, mutate_matrix, pos


class VertexColor(enum.Enum):
    GREEN = "G"
    RED = "R"


def vector_sign(v: Sequence[int]) -> int:
    """``+1`` for a nonzero vector with no negative entry, ``-1`` for one with no positive entry.

    Raises
    ------
    SignCoherenceViolation
        For the zero vector or a vector with entries of both signs.
    """
    has_pos = has_neg = False
    for x in v:
        if x > 0:
            has_pos = True
        elif x < 0:
            has_neg = True
    if has_pos and not has_neg:
        return 1
    if has_neg and not has_pos:
        return -1
    raise SignCoherenceViolation(f"c-vector {tuple(v)} is not sign-coherent")


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            mk = m[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pivot - mik * mk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class YSeed:
    """A Y-seed ``(c, B)``.

    ``c[j]`` is the c-vector at vertex ``j``; together the rows form the
    C-matrix. Construction checks that every c-vector is nonzero and
    sign-coherent and that the C-matrix is unimodular. ``path`` records
    the 0-based mutations from the initial seed and does not take part in
    equality.
    """

    c: tuple[tuple[int, ...], ...]
    B: ExchangeMatrix
    path: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.B.n
        if len(self.c) != n or any(len(v) != n for v in self.c):
            raise ValueError(f"c-vectors must form an {n}x{n} matrix")
        for v in self.c:
            try:
                vector_sign(v)
            except SignCoherenceViolation as exc:
                raise SignCoherenceViolation(str(exc), self.path) from None
        d = determinant(self.c)
        if abs(d) != 1:
            raise SignCoherenceViolation(f"c-vectors do not form a basis of Z^{n} (det = {d})", self.path)

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def coherence_proven(self) -> bool:
        """False when ``B`` is only skew-symmetrizable, where sign coherence is conjectural."""
        return self.B.is_skew_symmetric

    def colors(self) -> str:
        return "".join(vertex_color(self, k).value for k in range(self.n))

    def all_red(self) -> bool:
        return all(c_sign(self, k) < 0 for k in range(self.n))

    def green_vertices(self) -> list[int]:
        return [k for k in range(self.n) if c_sign(self, k) > 0]


def initial_seed(B0: ExchangeMatrix) -> YSeed:
    n = B0.n
    return YSeed(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), B0)


def c_sign(seed: YSeed, k: int) -> int:
    return vector_sign(seed.c[k])


def vertex_color(seed: YSeed, k: int) -> VertexColor:
    return VertexColor.GREEN if c_sign(seed, k) > 0 else VertexColor.RED


def mutate_seed(seed: YSeed, k: int) -> YSeed:
    """Y-seed mutation at vertex ``k`` (0-based).

    ``c'_k = -c_k`` and ``c'_i = c_i + [sgn(c_k) B[k][i]]_+ c_k`` for
    ``i != k``; the exchange matrix goes through :func:`mutate_matrix`.
    The resulting seed is re-validated.
    """
    B = seed.B
    if not 0 <= k < B.n:
        raise IndexError(f"vertex index {k} out of range for rank {B.n}")
    try:
        eps = c_sign(seed, k)
    except SignCoherenceViolation as exc:
        raise SignCoherenceViolation(str(exc), seed.path) from None
    ck = seed.c[k]
    row = B.entries[k]
    c = []
    for i, ci in enumerate(seed.c):
        if i == k:
            c.append(tuple(-x for x in ck))
            continue
        t = pos(eps * row[i])
        c.append(tuple(checked(x + t * y) for x, y in zip(ci, ck)) if t else ci)
    return YSeed(tuple(c), mutate_matrix(B, k), seed.path + (k,))
