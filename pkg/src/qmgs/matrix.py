"""Exact integer exchange matrices.

Skew-symmetrizability checks, matrix mutation (entrywise and as a
product of three matrices), isomorphism up to relabelling of vertices,
canonical forms and mutation-class enumeration.

Vertices are 0-based throughout the library; the text format and the
command line use 1-based labels.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import MutationOverflowError, NotSkewSymmetrizable, SizeLimitExceeded

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

#: Largest rank accepted by the brute-force canonical form.
CANONICAL_MAX_N = 10

Rows = tuple[tuple[int, ...], ...]


def checked(x: int) -> int:
    """Return ``x`` unchanged, or raise if it does not fit in 64 bits."""
    if x > INT64_MAX or x < INT64_MIN:
        raise MutationOverflowError(f"integer {x} exceeds the signed 64-bit range")
    return x


def pos(b: int) -> int:
    """``[b]_+ = max(b, 0)``."""
    return b if b > 0 else 0


def _as_rows(entries: Iterable[Iterable[int]]) -> Rows:
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    n = len(rows)
    if n == 0:
        raise ValueError("exchange matrix must have at least one vertex")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}")
        for x in row:
            checked(x)
    return rows


def find_symmetrizer(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Find the reduced positive diagonal ``D`` making ``D @ m`` skew-symmetric.

    Ratios ``d_j / d_i = -m[i][j] / m[j][i]`` are propagated along each
    connected component of the nonzero pattern, then denominators are
    cleared and each component is divided by its gcd, so the result is
    deterministic and has overall gcd 1.

    Parameters
    ----------
    m : sequence of sequences of int
        Square integer matrix.

    Returns
    -------
    tuple of int
        Diagonal entries ``(d_1, ..., d_n)``.

    Raises
    ------
    NotSkewSymmetrizable
        On a nonzero diagonal entry, a sign-pattern violation, or a cycle
        of inconsistent ratios. ``err.where`` carries the 0-based pair.
    """
    rows = _as_rows(m)
    n = len(rows)
    for i in range(n):
        if rows[i][i] != 0:
            raise NotSkewSymmetrizable(f"diagonal entry ({i + 1},{i + 1}) is nonzero", (i, i))
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0) or (a != 0 and (a > 0) == (b > 0)):
                raise NotSkewSymmetrizable(
                    f"entries ({i + 1},{j + 1})={a} and ({j + 1},{i + 1})={b} violate the sign pattern",
                    (i, j),
                )

    ratio: list[Fraction | None] = [None] * n
    diag = [0] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                want = -ratio[i] * rows[i][j] / rows[j][i]
                if ratio[j] is None:
                    ratio[j] = want
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != want:
                    raise NotSkewSymmetrizable(
                        f"inconsistent symmetrizer ratios around a cycle through ({i + 1},{j + 1})",
                        (i, j),
                    )
        den = lcm(*(ratio[i].denominator for i in component))
        scaled = [int(ratio[i] * den) for i in component]
        g = gcd(*scaled)
        for i, d in zip(component, scaled):
            diag[i] = d // g
    return tuple(diag)


@dataclass(frozen=True)
class ExchangeMatrix:
    """A skew-symmetrizable integer matrix ``B``.

    ``B[i][j] > 0`` counts arrows from ``j`` to ``i`` in quiver terms.
    Construction validates the matrix and stores its reduced symmetrizer.
    Equality and hashing look at the entries only.

    Examples
    --------
    >>> B = ExchangeMatrix([[0, 1], [-2, 0]])
    >>> B.symmetrizer
    (2, 1)
    >>> B[1, 0]
    -2
    """

    entries: Rows
    symmetrizer: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = _as_rows(entries)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "symmetrizer", find_symmetrizer(rows))

    @classmethod
    def _trusted(cls, rows: Rows, symmetrizer: tuple[int, ...]) -> ExchangeMatrix:
        # Caller guarantees ``symmetrizer`` symmetrizes ``rows``.
        self = object.__new__(cls)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "symmetrizer", symmetrizer)
        return self

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_skew_symmetric(self) -> bool:
        return all(d == 1 for d in self.symmetrizer)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(b * x for b, x in zip(row, v)) for row in self.entries)

    def __neg__(self) -> ExchangeMatrix:
        return ExchangeMatrix._trusted(tuple(tuple(-x for x in r) for r in self.entries), self.symmetrizer)

    def permute(self, sigma: VertexPermutation | Sequence[int]) -> ExchangeMatrix:
        """Relabel vertex ``i`` as ``sigma(i)``: the result ``R`` has ``R[sigma(i)][sigma(j)] = B[i][j]``."""
        images = tuple(sigma)
        inv = [0] * self.n
        for i, s in enumerate(images):
            inv[s] = i
        rows = tuple(tuple(self.entries[inv[r]][inv[c]] for c in range(self.n)) for r in range(self.n))
        sym = tuple(self.symmetrizer[inv[r]] for r in range(self.n))
        return ExchangeMatrix._trusted(rows, sym)

    def symmetrizes(self, d: Sequence[int]) -> bool:
        """True if the positive diagonal ``d`` makes ``diag(d) @ B`` skew-symmetric."""
        if len(d) != self.n or any(x <= 0 for x in d):
            return False
        e = self.entries
        n = len(e)
        for i in range(n):
            di, row = d[i], e[i]
            for j in range(i, n):
                if di * row[j] != -d[j] * e[j][i]:
                    return False
        return True


@dataclass(frozen=True)
class VertexPermutation:
    """A bijection on ``{0, ..., n-1}`` stored as its list of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> VertexPermutation:
        return cls(tuple(range(n)))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> VertexPermutation:
        inv = [0] * len(self.images)
        for i, s in enumerate(self.images):
            inv[s] = i
        return VertexPermutation(tuple(inv))

    def compose(self, other: VertexPermutation) -> VertexPermutation:
        """``(self . other)(i) = self(other(i))``."""
        return VertexPermutation(tuple(self.images[j] for j in other.images))


def _check_vertex(B: ExchangeMatrix, k: int) -> None:
    if not 0 <= k < B.n:
        raise IndexError(f"vertex index {k} out of range for rank {B.n}")


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at vertex ``k`` (0-based).

    Row and column ``k`` change sign; every other entry becomes
    ``B[i][j] + [B[i][k]]_+ [B[k][j]]_+ - [-B[i][k]]_+ [-B[k][j]]_+``.
    The symmetrizer of ``B`` is verified to symmetrize the result.
    """
    _check_vertex(B, k)
    e = B.entries
    n = B.n
    rk = e[k]
    rows = []
    for i in range(n):
        row = e[i]
        if i == k:
            rows.append(tuple(-x for x in row))
            continue
        bik = row[k]
        new = list(row)
        for j in range(n):
            if j == k:
                new[j] = -bik
            elif bik > 0 and rk[j] > 0:
                v = row[j] + bik * rk[j]
                new[j] = v if v <= INT64_MAX else checked(v)
            elif bik < 0 and rk[j] < 0:
                v = row[j] - bik * rk[j]
                new[j] = v if v >= INT64_MIN else checked(v)
        rows.append(tuple(new))
    out = ExchangeMatrix._trusted(tuple(rows), B.symmetrizer)
    if not out.symmetrizes(B.symmetrizer):
        raise AssertionError(f"symmetrizer {B.symmetrizer} lost under mutation at {k + 1}")
    return out


def _matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[checked(sum(a * b for a, b in zip(row, col))) for col in cols] for row in x]


def mutate_matrix_form(B: ExchangeMatrix, k: int, eps: int) -> ExchangeMatrix:
    """Matrix mutation written as ``(J + E) @ B @ (J + F)``.

    ``J`` is the identity with ``-1`` at ``(k, k)``; ``E`` is zero except
    column ``k`` with ``E[i][k] = [-eps * B[i][k]]_+``; ``F`` is zero except
    row ``k`` with ``F[k][j] = [eps * B[k][j]]_+``. Either sign of ``eps``
    gives the same matrix as :func:`mutate_matrix`.
    """
    _check_vertex(B, k)
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    n = B.n
    left = [[int(i == j) for j in range(n)] for i in range(n)]
    right = [[int(i == j) for j in range(n)] for i in range(n)]
    left[k][k] = right[k][k] = -1
    for i in range(n):
        left[i][k] += pos(-eps * B[i, k])
        right[k][i] += pos(eps * B[k, i])
    rows = _matmul(_matmul(left, B.entries), right)
    return ExchangeMatrix._trusted(tuple(map(tuple, rows)), B.symmetrizer)


def vertex_signatures(B: ExchangeMatrix, labels: Sequence | None = None) -> list[tuple]:
    """Isomorphism-invariant vertex invariants used to prune permutation search.

    Each vertex gets the sorted multisets of its row and column entries
    (plus its label when given), refined once by the multiset of
    (weight, neighbour invariant) pairs.
    """
    e = B.entries
    n = B.n
    base = []
    for i in range(n):
        sig = (tuple(sorted(e[i])), tuple(sorted(e[j][i] for j in range(n))))
        if labels is not None:
            sig = (labels[i],) + sig
        base.append(sig)
    return [
        (base[i], tuple(sorted((e[i][j], e[j][i], base[j]) for j in range(n) if j != i and e[i][j])))
        for i in range(n)
    ]


def isomorphisms(B1: ExchangeMatrix, B2: ExchangeMatrix) -> Iterator[VertexPermutation]:
    """Yield every ``sigma`` with ``B2[sigma(i)][sigma(j)] == B1[i][j]``, in lexicographic order."""
    if B1.n != B2.n:
        return
    n = B1.n
    s1, s2 = vertex_signatures(B1), vertex_signatures(B2)
    if sorted(s1) != sorted(s2):
        return
    e1, e2 = B1.entries, B2.entries
    sigma = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[VertexPermutation]:
        if i == n:
            yield VertexPermutation(tuple(sigma))
            return
        for t in range(n):
            if used[t] or s2[t] != s1[i]:
                continue
            if any(e2[t][sigma[l]] != e1[i][l] or e2[sigma[l]][t] != e1[l][i] for l in range(i)):
                continue
            sigma[i] = t
            used[t] = True
            yield from extend(i + 1)
            used[t] = False
        sigma[i] = -1

    yield from extend(0)


def are_isomorphic(B1: ExchangeMatrix, B2: ExchangeMatrix) -> VertexPermutation | None:
    """Return ``sigma`` with ``B2[sigma(i)][sigma(j)] == B1[i][j]``, or ``None``.

    Backtracking assigns vertices of ``B1`` in order and tries targets in
    ascending order, pruned by :func:`vertex_signatures`; the first hit is
    returned, so ``are_isomorphic(B, B)`` is the identity.
    """
    return next(isomorphisms(B1, B2), None)


def automorphisms(B: ExchangeMatrix) -> list[VertexPermutation]:
    return list(isomorphisms(B, B))


def _admissible_orders(sigs: list[tuple]) -> Iterator[list[int]]:
    """Yield position -> vertex maps that sort vertices by signature."""
    classes: dict[tuple, list[int]] = {}
    for v, s in enumerate(sigs):
        classes.setdefault(s, []).append(v)
    blocks = [classes[s] for s in sorted(classes)]
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        yield [v for block in choice for v in block]


def canonical_labelling(
    B: ExchangeMatrix, labels: Sequence[int] | None = None, max_n: int = CANONICAL_MAX_N
) -> VertexPermutation:
    """Permutation taking ``B`` (and optional vertex labels) to canonical form.

    Among relabellings that sort vertices by :func:`vertex_signatures`,
    picks the one whose relabelled matrix has the lexicographically
    smallest row-major entry list, ties broken by the relabelled labels.
    """
    n = B.n
    if n > max_n:
        raise SizeLimitExceeded(f"canonical form is bounded at n <= {max_n}, got n = {n}")
    e = B.entries
    sigs = vertex_signatures(B, labels)
    best_key = None
    best_order = None
    for order in _admissible_orders(sigs):
        key = [e[order[r]][order[c]] for r in range(n) for c in range(n)]
        if labels is not None:
            key.extend(labels[v] for v in order)
        if best_key is None or key < best_key:
            best_key, best_order = key, order
    # order maps position -> vertex; the relabelling sends vertex -> position
    sigma = [0] * n
    for p, v in enumerate(best_order):
        sigma[v] = p
    return VertexPermutation(tuple(sigma))


def canonical_form(B: ExchangeMatrix, max_n: int = CANONICAL_MAX_N) -> ExchangeMatrix:
    """Distinguished representative of the isomorphism class of ``B``.

    ``canonical_form(B1) == canonical_form(B2)`` exactly when ``B1`` and
    ``B2`` differ by a relabelling of vertices.

    Raises
    ------
    SizeLimitExceeded
        If ``B.n > max_n``; the search is brute force.
    """
    return B.permute(canonical_labelling(B, max_n=max_n))


def enumerate_mutation_class(B: ExchangeMatrix, max_size: int = 1000) -> tuple[set[ExchangeMatrix], bool]:
    """Breadth-first closure of ``canonical_form(B)`` under all mutations.

    Returns the set of canonical representatives and a ``truncated`` flag,
    set when the class would grow beyond ``max_size``.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    start = canonical_form(B)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for k in range(cur.n):
            nxt = canonical_form(mutate_matrix(cur, k))
            if nxt in seen:
                continue
            if len(seen) >= max_size:
                return seen, True
            seen.add(nxt)
            queue.append(nxt)
    return seen, False


def is_acyclic(B: ExchangeMatrix) -> bool:
    return topological_sources(B) is not None


def topological_sources(B: ExchangeMatrix) -> list[int] | None:
    """Repeatedly remove the smallest-index source; ``None`` if a cycle remains.

    Vertex ``i`` has an incoming arrow from ``j`` when ``B[i][j] > 0``.
    """
    remaining = set(range(B.n))
    order = []
    while remaining:
        for i in sorted(remaining):
            if not any(B[i, j] > 0 for j in remaining):
                order.append(i)
                remaining.discard(i)
                break
        else:
            return None
    return order
