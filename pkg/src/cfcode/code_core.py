"""The subset-containment code family: parameter validation, the entry rule,
row/column addressing, dense materialization, and size formulas.

A code instance is defined by (n, k, s, ell). Columns are the k-subsets of
[n]; rows are the unordered families of ell distinct s-subsets of [n]. The
entry at (row, column) is 1 exactly when at least one family member is
contained in the column subset. Rows and columns are addressed by 0-based
colex ranks, so every entry can be answered without building the matrix.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .combinatorics import KSubset, binomial, colex_rank, colex_subsets, colex_unrank

# Default cap on materialized matrix size, in bits.
MATERIALIZE_BIT_BUDGET = 1 << 30


class ParameterError(ValueError):
    """Invalid code parameters; ``constraint`` names the violated inequality."""

    def __init__(self, constraint: str, message: str) -> None:
        super().__init__(message)
        self.constraint = constraint


class ParameterWarning(UserWarning):
    """Parameters are accepted but sit outside the construction's intended range."""


class BudgetError(RuntimeError):
    """Materialization or a scan would exceed the configured budget."""


@dataclass(frozen=True)
class CodeParams:
    """The quadruple (n, k, s, ell) defining one code instance."""

    n: int
    k: int
    s: int
    ell: int


@dataclass(frozen=True)
class CodeDimensions:
    """Exact matrix sizes and the derived per-column statistics."""

    num_rows: int
    num_cols: int
    column_weight: int
    rate: float


def validate(params: CodeParams) -> CodeParams:
    """Check parameter invariants; return params unchanged when they hold.

    Raises ParameterError naming the violated constraint. Emits a
    ParameterWarning for tuple lengths at the degenerate edges (ell = 1, or
    ell + s equal to the column count), which are accepted but weaker than
    the construction is designed for.
    """
    n, k, s, ell = params.n, params.k, params.s, params.ell
    if s < 1:
        raise ParameterError("s >= 1", f"need s >= 1, got s={s}")
    if not s < k:
        raise ParameterError("s < k", f"need s < k, got s={s}, k={k}")
    if not k < n:
        raise ParameterError("k < n", f"need k < n, got k={k}, n={n}")
    if ell < 1:
        raise ParameterError("ell >= 1", f"need ell >= 1, got ell={ell}")
    t = binomial(n, k)
    if ell + s > t:
        raise ParameterError(
            "ell + s <= C(n,k)",
            f"need ell + s <= C(n,k), got {ell}+{s} > C({n},{k})={t}")
    if ell == 1:
        warnings.warn(ParameterWarning(
            f"ell=1 is the degenerate single-subset case for {params}"), stacklevel=2)
    elif ell + s == t:
        warnings.warn(ParameterWarning(
            f"ell + s equals the column count C({n},{k})={t}; "
            f"{params} sits at the edge of the usable range"), stacklevel=2)
    return params


@dataclass(frozen=True)
class RowLabel:
    """An unordered family of equal-size subsets labelling one row.

    Members are canonicalized to increasing colex-rank order on construction;
    duplicate members are rejected.
    """

    subsets: tuple[KSubset, ...]

    def __post_init__(self) -> None:
        members = tuple(self.subsets)
        if not members:
            raise ValueError("row label needs at least one subset")
        ground = members[0].ground_size
        size = len(members[0])
        for m in members:
            if m.ground_size != ground:
                raise ValueError("row label mixes ground set sizes")
            if len(m) != size:
                raise ValueError("row label mixes subset sizes")
        order = sorted(range(len(members)), key=lambda i: colex_rank(members[i]))
        ranked = [colex_rank(members[i]) for i in order]
        for a, b in zip(ranked, ranked[1:]):
            if a == b:
                raise ValueError("row label subsets must be pairwise distinct")
        object.__setattr__(self, "subsets", tuple(members[i] for i in order))

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self) -> Iterator[KSubset]:
        return iter(self.subsets)

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.subsets)


class BitMatrix:
    """Dense binary matrix, one bit-packed int per row (bit j = column j)."""

    __slots__ = ("num_rows", "num_cols", "rows")

    def __init__(self, num_rows: int, num_cols: int, rows: Sequence[int] | None = None) -> None:
        if num_rows < 0 or num_cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if rows is None:
            rows = [0] * num_rows
        if len(rows) != num_rows:
            raise ValueError(f"expected {num_rows} rows, got {len(rows)}")
        limit = 1 << num_cols
        for i, r in enumerate(rows):
            if not 0 <= r < limit:
                raise ValueError(f"row {i} does not fit in {num_cols} columns")
        self.num_rows = num_rows
        self.num_cols = num_cols
        self.rows = list(rows)

    def _check_index(self, i: int, j: int) -> None:
        if not 0 <= i < self.num_rows:
            raise IndexError(f"row index {i} outside [0, {self.num_rows})")
        if not 0 <= j < self.num_cols:
            raise IndexError(f"column index {j} outside [0, {self.num_cols})")

    def get(self, i: int, j: int) -> int:
        self._check_index(i, j)
        return (self.rows[i] >> j) & 1

    def set(self, i: int, j: int, bit: int) -> None:
        self._check_index(i, j)
        if bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {bit}")
        mask = 1 << j
        self.rows[i] = (self.rows[i] & ~mask) | (bit << j)

    def row_bits(self, i: int) -> list[int]:
        """Row i as a list of 0/1 ints, column rank order."""
        if not 0 <= i < self.num_rows:
            raise IndexError(f"row index {i} outside [0, {self.num_rows})")
        r = self.rows[i]
        return [(r >> j) & 1 for j in range(self.num_cols)]

    def column_int(self, j: int) -> int:
        """Column j packed into an int (bit i = row i)."""
        if not 0 <= j < self.num_cols:
            raise IndexError(f"column index {j} outside [0, {self.num_cols})")
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r >> j) & 1) << i
        return out

    def column_sums(self) -> list[int]:
        return [self.column_int(j).bit_count() for j in range(self.num_cols)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.num_rows == other.num_rows
                and self.num_cols == other.num_cols
                and self.rows == other.rows)

    __hash__ = None  # mutable

    def __repr__(self) -> str:
        return f"BitMatrix({self.num_rows}x{self.num_cols})"


def _require_column(params: CodeParams, col: KSubset) -> None:
    if col.ground_size != params.n:
        raise ValueError(
            f"column ground set [{col.ground_size}] does not match n={params.n}")
    if len(col) != params.k:
        raise ValueError(f"column must have {params.k} elements, got {len(col)}")


def _require_row_label(params: CodeParams, row: RowLabel) -> None:
    if len(row) != params.ell:
        raise ValueError(f"row label must have {params.ell} subsets, got {len(row)}")
    first = row.subsets[0]
    if first.ground_size != params.n:
        raise ValueError(
            f"row label ground set [{first.ground_size}] does not match n={params.n}")
    if len(first) != params.s:
        raise ValueError(
            f"row label subsets must have {params.s} elements, got {len(first)}")


def entry(params: CodeParams, row: RowLabel, col: KSubset) -> int:
    """The defining rule: 1 iff at least one row subset is contained in col."""
    validate(params)
    _require_column(params, col)
    _require_row_label(params, row)
    colset = set(col.elements)
    for member in row.subsets:
        if all(e in colset for e in member.elements):
            return 1
    return 0


def row_label_from_rank(params: CodeParams, rank: int) -> RowLabel:
    """Decode a 0-based row rank into its label.

    Two-level unranking: the rank picks an ell-subset of s-subset indices in
    colex order, and each index unranks to an s-subset of [n].
    """
    validate(params)
    m = binomial(params.n, params.s)
    total = binomial(m, params.ell)
    if not 0 <= rank < total:
        raise ValueError(f"row rank {rank} outside [0, {total})")
    indices = colex_unrank(rank, params.ell, m)
    members = tuple(colex_unrank(e - 1, params.s, params.n) for e in indices.elements)
    return RowLabel(members)


def row_rank_from_label(params: CodeParams, row: RowLabel) -> int:
    """Inverse of row_label_from_rank."""
    validate(params)
    _require_row_label(params, row)
    m = binomial(params.n, params.s)
    index_subset = KSubset(tuple(colex_rank(member) + 1 for member in row.subsets), m)
    return colex_rank(index_subset)


def column_from_rank(params: CodeParams, rank: int) -> KSubset:
    """Decode a 0-based column rank into its k-subset."""
    validate(params)
    total = binomial(params.n, params.k)
    if not 0 <= rank < total:
        raise ValueError(f"column rank {rank} outside [0, {total})")
    return colex_unrank(rank, params.k, params.n)


def column_rank(params: CodeParams, col: KSubset) -> int:
    """Inverse of column_from_rank."""
    validate(params)
    _require_column(params, col)
    return colex_rank(col)


def _rate(num_cols: int, num_rows: int) -> float:
    log2_cols = math.log2(num_cols)
    try:
        return log2_cols / num_rows
    except OverflowError:
        # num_rows exceeds float range; scale through an exact fraction.
        return float(Fraction(log2_cols) / num_rows)


def dimensions(params: CodeParams) -> CodeDimensions:
    """Exact row/column counts, the per-column weight, and the code rate.

    The weight counts row labels with at least one member inside a fixed
    column, by complement: families drawn entirely from the subsets not
    contained in the column never hit it.
    """
    validate(params)
    n, k, s, ell = params.n, params.k, params.s, params.ell
    m = binomial(n, s)
    num_rows = binomial(m, ell)
    num_cols = binomial(n, k)
    column_weight = num_rows - binomial(m - binomial(k, s), ell)
    return CodeDimensions(num_rows, num_cols, column_weight, _rate(num_cols, num_rows))


def materialize(params: CodeParams, row_limit: int | None = None,
                max_bits: int = MATERIALIZE_BIT_BUDGET) -> BitMatrix:
    """Build the full matrix, rows and columns in rank order.

    Refuses with BudgetError when the row count exceeds ``row_limit`` or the
    total bit count exceeds ``max_bits``; larger instances should be queried
    through entry() instead.
    """
    dims = dimensions(params)
    num_rows, num_cols = dims.num_rows, dims.num_cols
    if row_limit is not None and num_rows > row_limit:
        raise BudgetError(f"{num_rows} rows exceed the row limit {row_limit}")
    needed = num_rows * num_cols
    if needed > max_bits:
        raise BudgetError(f"matrix needs {needed} bits, budget allows {max_bits}")
    n, k, s, ell = params.n, params.k, params.s, params.ell

    columns = list(colex_subsets(k, n))
    col_index = {c: j for j, c in enumerate(columns)}
    ground = range(1, n + 1)
    # For every s-subset, the bit pattern of all columns containing it.
    member_bits = []
    for sub in colex_subsets(s, n):
        pattern = 0
        others = [e for e in ground if e not in sub]
        for extra in itertools.combinations(others, k - s):
            pattern |= 1 << col_index[tuple(sorted(sub + extra))]
        member_bits.append(pattern)

    rows = [0] * num_rows
    for i, idx in enumerate(colex_subsets(ell, len(member_bits))):
        bits = 0
        for e in idx:
            bits |= member_bits[e - 1]
        rows[i] = bits
    return BitMatrix(num_rows, num_cols, rows)


def best_k(n: int, s: int, ell: int) -> tuple[int, int]:
    """The admissible k maximizing the column count, with that count.

    Ties break toward smaller k; C(n, k) is unimodal, so the winner is n//2
    or (n+1)//2 whenever those are admissible.
    """
    if s < 1:
        raise ParameterError("s >= 1", f"need s >= 1, got s={s}")
    if ell < 1:
        raise ParameterError("ell >= 1", f"need ell >= 1, got ell={ell}")
    best: tuple[int, int] | None = None
    for k in range(s + 1, n):
        t = binomial(n, k)
        if ell + s > t:
            continue
        if best is None or t > best[1]:
            best = (k, t)
    if best is None:
        raise ParameterError(
            "admissible k exists",
            f"no k with s < k < n and ell + s <= C(n,k) for n={n}, s={s}, ell={ell}")
    return best


def asymptotic_estimates(n: int, s: int, ell: int) -> tuple[int, float]:
    """Leading-order size estimates for the k = n/2 instance.

    Returns (log2 of the column count, estimated row count); the row estimate
    is n**(s*ell) / (s!**ell * ell!). Reference values for reports, not exact
    claims.
    """
    if n < 1 or s < 1 or ell < 1:
        raise ValueError(f"need positive n, s, ell, got ({n}, {s}, {ell})")
    denominator = math.factorial(s) ** ell * math.factorial(ell)
    try:
        rows_estimate = n ** (s * ell) / denominator
    except OverflowError:
        rows_estimate = math.exp(s * ell * math.log(n) - math.log(denominator))
    return n, rows_estimate
