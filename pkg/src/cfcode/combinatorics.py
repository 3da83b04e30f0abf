"""Exact subset addressing: big-integer binomials and the colexicographic
rank/unrank bijection.

Subsets are 1-based (drawn from [n] = {1, ..., n}); ranks are 0-based. All
values are Python ints, so nothing here overflows or rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

# Pascal rows 0..PASCAL_LIMIT are built once at import and never mutated
# afterwards, so lookups are safe from any thread. Above the limit the
# multiplicative formula takes over.
PASCAL_LIMIT = 128


def _pascal_rows(limit: int) -> list[tuple[int, ...]]:
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(1, limit + 1):
        prev = rows[-1]
        row = [1] * (n + 1)
        for k in range(1, n):
            row[k] = prev[k - 1] + prev[k]
        rows.append(tuple(row))
    return rows


_PASCAL = _pascal_rows(PASCAL_LIMIT)


def binomial(n: int, k: int) -> int:
    """Return C(n, k) exactly; 0 when k > n, 1 when k == 0."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial expects nonnegative arguments, got ({n}, {k})")
    if k > n:
        return 0
    if n <= PASCAL_LIMIT:
        return _PASCAL[n][k]
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        # Exact at every step: any i consecutive integers contain a multiple of i.
        result = result * (n - k + i) // i
    return result


@dataclass(frozen=True)
class KSubset:
    """A strictly increasing tuple of elements of {1, ..., ground_size}."""

    elements: tuple[int, ...]
    ground_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.ground_size < 0:
            raise ValueError(f"ground size must be nonnegative, got {self.ground_size}")
        prev = 0
        for e in self.elements:
            if e <= prev:
                raise ValueError(
                    f"elements must be strictly increasing and positive, got {self.elements}")
            prev = e
        if self.elements and self.elements[-1] > self.ground_size:
            raise ValueError(
                f"element {self.elements[-1]} outside ground set [{self.ground_size}]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], ground_size: int) -> "KSubset":
        """Build from any iterable, sorting first. Duplicates are still rejected."""
        return cls(tuple(sorted(elements)), ground_size)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


def colex_rank(subset: KSubset) -> int:
    """0-based colex rank of the subset among all subsets of its size.

    With elements c_1 < ... < c_m the rank is the sum of C(c_i - 1, i); it does
    not depend on the ground size.
    """
    return sum(binomial(c - 1, i) for i, c in enumerate(subset.elements, start=1))


def colex_unrank(rank: int, m: int, n: int) -> KSubset:
    """The unique m-subset of [n] whose colex rank is ``rank``."""
    total = binomial(n, m)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, C({n},{m})) = [0, {total})")
    elements = [0] * m
    r = rank
    hi = n
    for i in range(m, 0, -1):
        # Largest c in [i, hi] with C(c - 1, i) <= r, by binary search.
        lo = i
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if binomial(mid - 1, i) <= r:
                lo = mid
            else:
                hi = mid - 1
        elements[i - 1] = lo
        r -= binomial(lo - 1, i)
        hi = lo - 1
    return KSubset(tuple(elements), n)


def colex_subsets(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """Yield every m-subset of [n] as a tuple, in colex (= rank) order."""
    if m == 0:
        yield ()
        return
    for top in range(m, n + 1):
        for rest in colex_subsets(m - 1, top - 1):
            yield rest + (top,)
