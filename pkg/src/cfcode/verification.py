"""Cover-free checking: per-row pattern tests, the exhaustive verifier over
all disjoint column families, explicit witness construction, and the
brute-force column weight oracle.

A matrix is cover-free for (s, ell) when every choice of s "negative" and
ell disjoint "positive" columns admits a row that is 0 on all negatives and
1 on all positives. Queries address columns by 1-based position.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .code_core import (
    BitMatrix,
    BudgetError,
    CodeParams,
    RowLabel,
    _require_column,
    dimensions,
    validate,
)
from .combinatorics import KSubset, colex_subsets

# Cap on exhaustive row-label scans (witness fallback, weight oracle).
FALLBACK_SCAN_LIMIT = 1_000_000


class WitnessSearchError(RuntimeError):
    """No witness row exists: the construction's guarantee fails for the
    requested column family. Surfaced loudly because callers normally rely
    on a witness always being constructible."""


@dataclass(frozen=True)
class CoverFreeQuery:
    """Disjoint negative/positive column families, 1-based column positions."""

    neg_cols: tuple[int, ...]
    pos_cols: tuple[int, ...]

    def __post_init__(self) -> None:
        neg = tuple(sorted(self.neg_cols))
        pos = tuple(sorted(self.pos_cols))
        for name, cols in (("neg_cols", neg), ("pos_cols", pos)):
            if not cols:
                raise ValueError(f"{name} must be nonempty")
            prev = 0
            for c in cols:
                if c <= prev:
                    raise ValueError(f"{name} must be distinct positive positions, got {cols}")
                prev = c
        if set(neg) & set(pos):
            raise ValueError("negative and positive columns must be disjoint")
        object.__setattr__(self, "neg_cols", neg)
        object.__setattr__(self, "pos_cols", pos)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification run.

    When ``holds`` is false, ``counterexample`` is the first failing family in
    enumeration order and ``witness_count`` is 0. When it is true and the run
    counted witnesses, ``witness_count`` reports the last family's count.
    """

    holds: bool
    counterexample: CoverFreeQuery | None = None
    witness_count: int | None = None


def row_satisfies(row: Sequence[int], query: CoverFreeQuery) -> bool:
    """True iff the row is 0 on every negative and 1 on every positive column."""
    width = len(row)
    for j in query.neg_cols + query.pos_cols:
        if not 1 <= j <= width:
            raise IndexError(f"column {j} outside 1..{width}")
    return (all(int(row[j - 1]) == 0 for j in query.neg_cols)
            and all(int(row[j - 1]) == 1 for j in query.pos_cols))


def _check_query_shape(matrix: BitMatrix, s: int, ell: int) -> None:
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    if ell < 1:
        raise ValueError(f"need ell >= 1, got {ell}")
    if s + ell > matrix.num_cols:
        raise ValueError(
            f"need s + ell <= {matrix.num_cols} columns, got {s} + {ell}")


def _scan_block(ones: list[int], full: int, t: int,
                neg_list: list[tuple[int, ...]], start: int, stop: int,
                pos_positions: list[tuple[int, ...]]) -> tuple[int, tuple[int, ...], tuple[int, ...]] | None:
    """Scan negative families neg_list[start:stop] against every positive
    family; return (global pair index, neg, pos) of the first failure."""
    per_neg = len(pos_positions)
    ell = len(pos_positions[0])
    for si in range(start, stop):
        neg = neg_list[si]
        base = full
        for j in neg:
            base &= full ^ ones[j - 1]
        negset = set(neg)
        comp = [c for c in range(1, t + 1) if c not in negset]
        cones = [ones[c - 1] for c in comp]
        # Unrolled inner loops for the common family sizes.
        if ell == 1:
            for li, (p0,) in enumerate(pos_positions):
                if not base & cones[p0]:
                    return si * per_neg + li, neg, (comp[p0],)
        elif ell == 2:
            for li, (p0, p1) in enumerate(pos_positions):
                if not base & cones[p0] & cones[p1]:
                    return si * per_neg + li, neg, (comp[p0], comp[p1])
        elif ell == 3:
            for li, (p0, p1, p2) in enumerate(pos_positions):
                if not base & cones[p0] & cones[p1] & cones[p2]:
                    return si * per_neg + li, neg, (comp[p0], comp[p1], comp[p2])
        else:
            for li, ptuple in enumerate(pos_positions):
                m = base
                for p in ptuple:
                    m &= cones[p]
                if not m:
                    return si * per_neg + li, neg, tuple(comp[p] for p in ptuple)
    return None


def verify_cover_free(matrix: BitMatrix, s: int, ell: int, *, threads: int = 1,
                      count_witnesses: bool = False) -> Verdict:
    """Exhaustively test the cover-free condition over all disjoint (s, ell)
    column families.

    Families are enumerated in colex order of the negative family, then colex
    order of the positive family within the remaining columns, so a failing
    verdict always carries the first failing family in that order. ``threads``
    splits the negative-family space into contiguous blocks; the verdict is
    identical for every thread count. ``count_witnesses`` disables early exit
    and fills in witness multiplicity (that mode runs single-threaded).
    """
    _check_query_shape(matrix, s, ell)
    if count_witnesses:
        first_fail: CoverFreeQuery | None = None
        last_count = 0
        for query, count in witness_counts(matrix, s, ell):
            if count == 0 and first_fail is None:
                first_fail = query
            last_count = count
        if first_fail is not None:
            return Verdict(False, first_fail, 0)
        return Verdict(True, None, last_count)

    t = matrix.num_cols
    ones = [matrix.column_int(j) for j in range(t)]
    full = (1 << matrix.num_rows) - 1
    neg_list = list(colex_subsets(s, t))
    pos_positions = [tuple(p - 1 for p in tup) for tup in colex_subsets(ell, t - s)]

    workers = max(1, min(int(threads), len(neg_list)))
    if workers == 1:
        failure = _scan_block(ones, full, t, neg_list, 0, len(neg_list), pos_positions)
    else:
        step = -(-len(neg_list) // workers)
        blocks = [(i, min(i + step, len(neg_list))) for i in range(0, len(neg_list), step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda block: _scan_block(ones, full, t, neg_list, block[0], block[1], pos_positions),
                blocks))
        failures = [f for f in results if f is not None]
        failure = min(failures, key=lambda f: f[0]) if failures else None

    if failure is None:
        return Verdict(True, None, None)
    _, neg, pos = failure
    return Verdict(False, CoverFreeQuery(neg, pos), 0)


def witness_counts(matrix: BitMatrix, s: int, ell: int) -> Iterator[tuple[CoverFreeQuery, int]]:
    """Yield every disjoint (s, ell) column family with its witness-row count,
    in verifier enumeration order."""
    _check_query_shape(matrix, s, ell)
    t = matrix.num_cols
    ones = [matrix.column_int(j) for j in range(t)]
    full = (1 << matrix.num_rows) - 1
    pos_positions = [tuple(p - 1 for p in tup) for tup in colex_subsets(ell, t - s)]
    for neg in colex_subsets(s, t):
        base = full
        for j in neg:
            base &= full ^ ones[j - 1]
        negset = set(neg)
        comp = [c for c in range(1, t + 1) if c not in negset]
        cones = [ones[c - 1] for c in comp]
        for ptuple in pos_positions:
            m = base
            for p in ptuple:
                m &= cones[p]
            yield CoverFreeQuery(neg, tuple(comp[p] for p in ptuple)), m.bit_count()


def witness_row(params: CodeParams, neg_cols: Sequence[KSubset],
                pos_cols: Sequence[KSubset]) -> RowLabel:
    """Construct a row label separating the given column families: every
    member avoids every negative column and each positive column contains a
    member.

    Candidates for each positive column are scanned in increasing element
    order and assigned by backtracking, so the result is deterministic. If no
    per-column assignment exists, the search falls back to scanning all row
    labels through the entry rule; WitnessSearchError then means no witness
    row exists at all.
    """
    validate(params)
    for col in itertools.chain(neg_cols, pos_cols):
        _require_column(params, col)
    seen: set[tuple[int, ...]] = set()
    for col in itertools.chain(neg_cols, pos_cols):
        if col.elements in seen:
            raise ValueError(f"columns must be pairwise distinct, {col} repeats")
        seen.add(col.elements)
    if not neg_cols:
        raise ValueError("need at least one negative column")
    if len(pos_cols) != params.ell:
        raise ValueError(
            f"need exactly ell={params.ell} positive columns, got {len(pos_cols)}")

    s = params.s
    neg_sets = [set(col.elements) for col in neg_cols]
    candidate_lists = []
    for col in pos_cols:
        cands = [c for c in itertools.combinations(col.elements, s)
                 if not any(set(c) <= ns for ns in neg_sets)]
        candidate_lists.append(cands)

    chosen: list[tuple[int, ...]] = []
    used: set[tuple[int, ...]] = set()

    def extend(i: int) -> bool:
        if i == len(candidate_lists):
            return True
        for cand in candidate_lists[i]:
            if cand in used:
                continue
            used.add(cand)
            chosen.append(cand)
            if extend(i + 1):
                return True
            used.discard(cand)
            chosen.pop()
        return False

    if extend(0):
        return RowLabel(tuple(KSubset(c, params.n) for c in chosen))
    return _exhaustive_witness(params, neg_sets, [set(col.elements) for col in pos_cols])


def _exhaustive_witness(params: CodeParams, neg_sets: list[set[int]],
                        pos_sets: list[set[int]]) -> RowLabel:
    num_rows = dimensions(params).num_rows
    if num_rows > FALLBACK_SCAN_LIMIT:
        raise WitnessSearchError(
            f"no per-column assignment found and scanning {num_rows} row labels "
            f"exceeds the limit {FALLBACK_SCAN_LIMIT}")
    subs = list(colex_subsets(params.s, params.n))
    escapes = [not any(set(c) <= ns for ns in neg_sets) for c in subs]
    inside = [[set(c) <= ps for c in subs] for ps in pos_sets]
    for idx in colex_subsets(params.ell, len(subs)):
        if (all(escapes[e - 1] for e in idx)
                and all(any(ins[e - 1] for e in idx) for ins in inside)):
            return RowLabel(tuple(KSubset(subs[e - 1], params.n) for e in idx))
    raise WitnessSearchError(
        "no witness row exists for the given column families: "
        "the cover-free condition fails here")


def brute_force_column_weight(params: CodeParams, col: KSubset) -> int:
    """Count rows with a 1 in the given column by scanning every row label in
    rank order. Independent of the closed-form weight in dimensions()."""
    validate(params)
    _require_column(params, col)
    num_rows = dimensions(params).num_rows
    if num_rows > FALLBACK_SCAN_LIMIT:
        raise BudgetError(
            f"scan of {num_rows} row labels exceeds the limit {FALLBACK_SCAN_LIMIT}")
    colset = set(col.elements)
    subs = list(colex_subsets(params.s, params.n))
    contained = [all(e in colset for e in c) for c in subs]
    count = 0
    for idx in colex_subsets(params.ell, len(subs)):
        if any(contained[e - 1] for e in idx):
            count += 1
    return count
