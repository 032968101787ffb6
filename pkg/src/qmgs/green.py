"""Green sequences: validation and bounded search for maximal green sequences."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .errors import MutationOverflowError, NotGreenAtStep, QMGSError
from .matrix import ExchangeMatrix, topological_sources
from .seed import YSeed, c_sign, initial_seed, mutate_seed

log = logging.getLogger(__name__)

#: A walk from the root of the n-regular tree, as 0-based vertex indices.
MutationSequence = tuple[int, ...]

COHERENCE_WARNING = (
    "exchange matrix is skew-symmetrizable but not skew-symmetric; "
    "sign coherence of c-vectors is conjectural in this regime"
)


@dataclass
class SearchOutcome:
    """Result of :func:`search_mgs`.

    ``found`` is sorted lexicographically. ``exhausted`` is true iff the
    depth-bounded green-move tree was explored completely, i.e. no branch
    was cut by ``max_len``, by an overflow, or by stopping early.
    ``nodes`` counts seeds expanded; ``memo_hits`` counts subtrees answered
    from the memo instead of being re-expanded.
    """

    found: list[MutationSequence]
    exhausted: bool
    nodes: int = 0
    memo_hits: int = 0
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def apply_sequence(B0: ExchangeMatrix, seq: Sequence[int], require_green: bool = False) -> YSeed:
    """Mutate the initial seed of ``B0`` along ``seq``.

    Raises
    ------
    NotGreenAtStep
        With ``require_green``, at the first step whose vertex is red.
    SignCoherenceViolation, MutationOverflowError
        Propagated from seed mutation.
    """
    seed = initial_seed(B0)
    for step, k in enumerate(seq, start=1):
        if not 0 <= k < B0.n:
            raise IndexError(f"vertex index {k} out of range for rank {B0.n}")
        if require_green and c_sign(seed, k) < 0:
            raise NotGreenAtStep(step, k)
        seed = mutate_seed(seed, k)
    return seed


def is_maximal_green(B0: ExchangeMatrix, seq: Sequence[int]) -> bool:
    """True iff every step of ``seq`` mutates a green vertex and the end seed is all red."""
    try:
        seed = apply_sequence(B0, seq, require_green=True)
    except (QMGSError, IndexError) as exc:
        log.info("not a maximal green sequence: %s", exc)
        return False
    if not seed.all_red():
        log.info("not maximal: final colors %s", seed.colors())
        return False
    return True


def _relabel_key(seed: YSeed) -> tuple[tuple, list[int]]:
    # c-vectors form a basis, so sorting them fixes a unique vertex order.
    order = sorted(range(seed.n), key=seed.c.__getitem__)
    e = seed.B.entries
    key = (tuple(seed.c[i] for i in order), tuple(tuple(e[i][j] for j in order) for i in order))
    return key, order


class _Search:
    def __init__(self, first: bool, memo: bool):
        self.first = first
        self.use_memo = memo
        # key -> (depth explored, suffixes in sorted-order positions, height or None)
        self.memo: dict = {}
        self.nodes = 0
        self.memo_hits = 0
        self.errors: list[str] = []
        self.stopped = False

    def run(self, seed: YSeed, r: int) -> tuple[list[MutationSequence], int | None]:
        """All MGS suffixes of length <= r from ``seed`` and the green-tree height (None if > r)."""
        greens = seed.green_vertices()
        if not greens:
            return [()], 0
        if r == 0:
            return [], None
        if self.use_memo:
            key, order = _relabel_key(seed)
            hit = self.memo.get(key)
            if hit is not None and hit[0] >= r:
                self.memo_hits += 1
                _, suffixes, height = hit
                out = [tuple(order[p] for p in s) for s in suffixes if len(s) <= r]
                out.sort()
                if self.first and out:
                    self.stopped = True
                    out = out[:1]
                return out, (height if height is not None and height <= r else None)
        self.nodes += 1
        found: list[MutationSequence] = []
        height: int | None = 0
        for k in greens:
            try:
                child = mutate_seed(seed, k)
            except MutationOverflowError as exc:
                self.errors.append(f"overflow after {[i + 1 for i in seed.path + (k,)]}: {exc}")
                height = None
                continue
            sub, h = self.run(child, r - 1)
            found.extend((k,) + s for s in sub)
            if self.first and found:
                self.stopped = True
            if self.stopped:
                return found, None
            if h is None:
                height = None
            elif height is not None:
                height = max(height, h + 1)
        if self.use_memo:
            pos = {v: p for p, v in enumerate(order)}
            self.memo[key] = (r, [tuple(pos[v] for v in s) for s in found], height)
        return found, height


def search_mgs(
    B0: ExchangeMatrix,
    max_len: int | None = None,
    mode: Literal["all", "first"] = "all",
    memo: bool = True,
) -> SearchOutcome:
    """Depth-first search over green mutations for maximal green sequences.

    Children are the green vertices in ascending order. With
    ``mode="all"`` every MGS of length at most ``max_len`` is returned;
    with ``mode="first"`` the search stops at the first one.

    Parameters
    ----------
    B0 : ExchangeMatrix
        Initial exchange matrix.
    max_len : int, optional
        Depth bound, default ``2 * n``. The bound is mandatory since the
        green-move tree can be infinite.
    mode : {"all", "first"}
    memo : bool
        Reuse results for seeds already explored, up to relabelling of
        vertices. Distinct sequences are still reported separately; the
        memo only avoids re-expanding identical subtrees.

    Returns
    -------
    SearchOutcome
    """
    if max_len is None:
        max_len = 2 * B0.n
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if mode not in ("all", "first"):
        raise ValueError(f"mode must be 'all' or 'first', got {mode!r}")
    search = _Search(first=mode == "first", memo=memo)
    found, height = search.run(initial_seed(B0), max_len)
    found = sorted(set(found))
    if search.first:
        found = found[:1]
    outcome = SearchOutcome(
        found=found,
        exhausted=height is not None and not search.stopped and not search.errors,
        nodes=search.nodes,
        memo_hits=search.memo_hits,
        errors=search.errors,
    )
    if not B0.is_skew_symmetric:
        outcome.warnings.append(COHERENCE_WARNING)
    for s in outcome.found:
        if not is_maximal_green(B0, s):
            raise AssertionError(f"search returned {s}, which is not a maximal green sequence")
    return outcome


def acyclic_source_sequence(B0: ExchangeMatrix) -> MutationSequence | None:
    """Source-first maximal green sequence of an acyclic quiver, or ``None`` if ``B0`` has a cycle.

    Repeatedly mutates the smallest-index vertex with no incoming arrow
    from the vertices not yet mutated.
    """
    order = topological_sources(B0)
    if order is None:
        return None
    seq = tuple(order)
    if not is_maximal_green(B0, seq):
        raise AssertionError(f"source sequence {seq} is not maximal green")
    return seq
