"""Stores of uncovered interaction elements with coverage queries.

Three observationally equivalent mechanisms, differing only in how a
query locates elements:

* ``HASH`` - buckets keyed by the parameter combination; each bucket is a
  hashed set of packed value tuples, so a query does one bucket lookup
  plus one set membership test per combination.
* ``INDEXED`` - one flat array sorted by (combination rank, packed value)
  with an offset table per combination; the within-slice search is linear,
  so query time grows with the number of values per combination.
* ``FULL_SCAN`` - one flat unsorted array; every query walks all of it.

A value tuple is packed into a single integer by mixed-radix encoding
over the combination's domains (first value has the largest stride, last
value stride 1). Packing is a bijection onto ``0..prod-1`` that preserves
odometer order, which has a pleasant consequence: a freshly built bucket
or slice is exactly ``range(prod)``.

Removal is logical: HASH deletes from bucket sets, INDEXED and FULL_SCAN
flip a tombstone flag so offsets stay valid. Builds are one-shot.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .combgen import count_combinations, iter_combinations_stack
from .model import Combination, CoveringArraySpec, InteractionElement, RowLike, as_assignment

#: Default ceiling on the number of interaction elements a store may hold.
#: Roughly 1 GiB of worst-case layout; raise it explicitly for bigger runs.
DEFAULT_MAX_ELEMENTS = 10_000_000


class StoreMechanism(enum.Enum):
    HASH = "hash"
    INDEXED = "indexed"
    FULL_SCAN = "full"


class CapacityError(RuntimeError):
    """Projected element count exceeds the configured memory budget."""

    def __init__(self, element_count: int, max_elements: int, approximate: bool = False):
        self.element_count = element_count
        self.max_elements = max_elements
        qualifier = "at least " if approximate else ""
        super().__init__(
            f"store would hold {qualifier}{element_count} interaction elements, "
            f"exceeding the budget of {max_elements}"
        )


@dataclass(frozen=True)
class StoreCounters:
    """Instrumentation snapshot: work performed by queries so far.

    ``bucket_lookups`` counts HASH bucket accesses (one per combination per
    query). ``elements_scanned`` counts array positions walked by INDEXED
    (tombstones included, since the scan cannot skip them) and live elements
    compared by FULL_SCAN.
    """

    bucket_lookups: int
    elements_scanned: int


def projected_element_count(spec: CoveringArraySpec) -> int:
    """Total interaction elements of a spec: sum over combinations of the domain product."""
    if len(set(spec.domains)) == 1:
        return count_combinations(spec.k, spec.t) * spec.domains[0] ** spec.t
    total = 0
    for combo in iter_combinations_stack(spec.k, spec.t):
        prod = 1
        for i in combo:
            prod *= spec.domains[i]
        total += prod
    return total


class InteractionStore:
    """Common machinery; concrete mechanisms fill in the query paths."""

    mechanism: StoreMechanism

    def __init__(self, spec: CoveringArraySpec):
        self.spec = spec
        domains = spec.domains
        combos = list(iter_combinations_stack(spec.k, spec.t))
        projections: list[tuple[tuple[int, int], ...]] = []
        products: list[int] = []
        for combo in combos:
            stride = 1
            pairs: list[tuple[int, int]] = []
            for i in reversed(combo):
                pairs.append((i, stride))
                stride *= domains[i]
            pairs.reverse()
            projections.append(tuple(pairs))
            products.append(stride)
        self._combos = combos
        self._projections = projections
        self._products = products
        self._remaining = sum(products)
        self._lookups = 0
        self._scanned = 0

    @property
    def counters(self) -> StoreCounters:
        return StoreCounters(bucket_lookups=self._lookups, elements_scanned=self._scanned)

    def remaining(self) -> int:
        """Exact count of still-uncovered elements; zero iff full coverage."""
        return self._remaining

    def coverage_count(self, row: RowLike) -> int:
        """How many still-uncovered elements the row covers. Read-only."""
        raise NotImplementedError

    def mark_covered(self, row: RowLike) -> int:
        """Remove every uncovered element the row covers; return how many."""
        raise NotImplementedError

    def uncovered_elements(self) -> Iterator[InteractionElement]:
        """Yield uncovered elements, combinations lexicographic, values in odometer order."""
        raise NotImplementedError

    def _checked_row(self, row: RowLike) -> tuple[int, ...]:
        assignment = as_assignment(row)
        self.spec.validate_row(assignment)
        return tuple(assignment)

    def _unpack(self, rank: int, packed: int) -> InteractionElement:
        combo = self._combos[rank]
        values = []
        for _, stride in self._projections[rank]:
            values.append(packed // stride)
            packed %= stride
        return InteractionElement(combo=Combination(combo), values=tuple(values))


class _HashStore(InteractionStore):
    mechanism = StoreMechanism.HASH

    def __init__(self, spec: CoveringArraySpec):
        super().__init__(spec)
        # Packing maps each combination's full value grid onto 0..prod-1.
        self._buckets: dict[tuple[int, ...], set[int]] = {
            combo: set(range(prod))
            for combo, prod in zip(self._combos, self._products)
        }

    def coverage_count(self, row: RowLike) -> int:
        row = self._checked_row(row)
        buckets = self._buckets
        n = 0
        for combo, proj in zip(self._combos, self._projections):
            packed = 0
            for i, stride in proj:
                packed += row[i] * stride
            bucket = buckets[combo]
            if packed in bucket:
                n += 1
        self._lookups += len(self._combos)
        return n

    def mark_covered(self, row: RowLike) -> int:
        row = self._checked_row(row)
        buckets = self._buckets
        removed = 0
        for combo, proj in zip(self._combos, self._projections):
            packed = 0
            for i, stride in proj:
                packed += row[i] * stride
            bucket = buckets[combo]
            if packed in bucket:
                bucket.remove(packed)
                removed += 1
        self._lookups += len(self._combos)
        self._remaining -= removed
        return removed

    def uncovered_elements(self) -> Iterator[InteractionElement]:
        for rank, combo in enumerate(self._combos):
            for packed in sorted(self._buckets[combo]):
                yield self._unpack(rank, packed)


class _IndexedStore(InteractionStore):
    mechanism = StoreMechanism.INDEXED

    def __init__(self, spec: CoveringArraySpec):
        super().__init__(spec)
        data: list[int] = []
        offsets = [0]
        for prod in self._products:
            data.extend(range(prod))
            offsets.append(len(data))
        self._data = data
        self._offsets = offsets
        self._alive = bytearray(b"\x01" * len(data))

    def _find(self, rank: int, packed: int) -> tuple[int, int]:
        """Linear search of the combination's slice; returns (position, cells walked)."""
        start = self._offsets[rank]
        pos = self._data.index(packed, start, self._offsets[rank + 1])
        return pos, pos - start + 1

    def coverage_count(self, row: RowLike) -> int:
        row = self._checked_row(row)
        alive = self._alive
        n = 0
        scanned = 0
        for rank, proj in enumerate(self._projections):
            packed = 0
            for i, stride in proj:
                packed += row[i] * stride
            pos, walked = self._find(rank, packed)
            scanned += walked
            if alive[pos]:
                n += 1
        self._scanned += scanned
        return n

    def mark_covered(self, row: RowLike) -> int:
        row = self._checked_row(row)
        alive = self._alive
        removed = 0
        scanned = 0
        for rank, proj in enumerate(self._projections):
            packed = 0
            for i, stride in proj:
                packed += row[i] * stride
            pos, walked = self._find(rank, packed)
            scanned += walked
            if alive[pos]:
                alive[pos] = 0
                removed += 1
        self._scanned += scanned
        self._remaining -= removed
        return removed

    def uncovered_elements(self) -> Iterator[InteractionElement]:
        data, alive = self._data, self._alive
        for rank in range(len(self._combos)):
            for pos in range(self._offsets[rank], self._offsets[rank + 1]):
                if alive[pos]:
                    yield self._unpack(rank, data[pos])


class _FullScanStore(InteractionStore):
    mechanism = StoreMechanism.FULL_SCAN

    def __init__(self, spec: CoveringArraySpec):
        super().__init__(spec)
        data: list[int] = []
        ranks: list[int] = []
        for rank, prod in enumerate(self._products):
            data.extend(range(prod))
            ranks.extend([rank] * prod)
        self._data = data
        self._ranks = ranks
        self._alive = bytearray(b"\x01" * len(data))

    def _row_targets(self, row: tuple[int, ...]) -> list[int]:
        targets = []
        for proj in self._projections:
            packed = 0
            for i, stride in proj:
                packed += row[i] * stride
            targets.append(packed)
        return targets

    def coverage_count(self, row: RowLike) -> int:
        row = self._checked_row(row)
        targets = self._row_targets(row)
        n = 0
        for packed, rank, live in zip(self._data, self._ranks, self._alive):
            if live and targets[rank] == packed:
                n += 1
        self._scanned += self._remaining
        return n

    def mark_covered(self, row: RowLike) -> int:
        row = self._checked_row(row)
        targets = self._row_targets(row)
        alive = self._alive
        removed = 0
        for pos, (packed, rank) in enumerate(zip(self._data, self._ranks)):
            if alive[pos] and targets[rank] == packed:
                alive[pos] = 0
                removed += 1
        self._scanned += self._remaining
        self._remaining -= removed
        return removed

    def uncovered_elements(self) -> Iterator[InteractionElement]:
        for pos, (packed, rank) in enumerate(zip(self._data, self._ranks)):
            if self._alive[pos]:
                yield self._unpack(rank, packed)


_MECHANISMS: dict[StoreMechanism, type[InteractionStore]] = {
    StoreMechanism.HASH: _HashStore,
    StoreMechanism.INDEXED: _IndexedStore,
    StoreMechanism.FULL_SCAN: _FullScanStore,
}


def build_store(
    spec: CoveringArraySpec,
    mechanism: StoreMechanism,
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> InteractionStore:
    """Build a store holding every interaction element of the spec exactly once.

    Raises :class:`CapacityError` before allocating anything if the projected
    element count exceeds ``max_elements``.
    """
    combos = count_combinations(spec.k, spec.t)
    if combos > max_elements:
        # Each combination contributes at least one element; don't even
        # try to sum the per-combination products.
        raise CapacityError(combos, max_elements, approximate=True)
    total = projected_element_count(spec)
    if total > max_elements:
        raise CapacityError(total, max_elements)
    return _MECHANISMS[mechanism](spec)
