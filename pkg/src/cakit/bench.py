"""Benchmark harness: generation-time sweeps and search-time comparisons.

Two experiment families:

* generation - wall-time a full streaming pass of the stack generator per
  (k, t) case, with the n-bit enumerator alongside where its 2^k mask walk
  is affordable;
* search - per store mechanism, build the store and drive a seeded,
  row-capped greedy workload, timing every individual coverage query. The
  headline metric is the maximum single query time (the store is fullest
  at the start, so early queries dominate), with min/median recorded too.

Protocol notes, since absolute times are hardware-bound and the point is
relative ordering: timings use ``time.perf_counter``; warmup passes and
warmup queries are excluded; generation cases whose combination count is
too large for the per-case wall-time budget are marked skipped, not
failed; everything runs strictly sequentially.
"""

from __future__ import annotations

import csv
import io
import json
import platform
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .combgen import (
    NBIT_MAX_WIDTH,
    count_combinations,
    iter_combinations_nbit,
    iter_combinations_stack,
)
from .greedy import GreedyConfig, IncompleteCoverageError, run_greedy
from .model import CoveringArraySpec
from .store import DEFAULT_MAX_ELEMENTS, CapacityError, StoreMechanism, build_store

#: Conservative streaming-rate guess (combinations/second) used only to
#: decide up front whether a generation case can fit its wall-time budget.
PRESKIP_RATE = 250_000

#: Largest k for which the n-bit baseline is attempted by default; the 2^k
#: mask walk above this takes longer than any insight it yields.
DEFAULT_NBIT_MAX_K = 24

CSV_COLUMNS = [
    "kind", "subject", "status", "k", "t", "v", "reps", "count",
    "time_min_s", "time_median_s", "time_max_s", "build_s",
    "rows_built", "queries", "bucket_lookups", "elements_scanned", "note",
]

#: JSON Schema (draft 2020-12) for serialized reports.
REPORT_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["environment", "records"],
    "properties": {
        "environment": {
            "type": "object",
            "required": ["os", "cpu", "python", "timestamp"],
            "properties": {
                "os": {"type": "string"},
                "cpu": {"type": "string"},
                "python": {"type": "string"},
                "timestamp": {"type": "string"},
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "subject", "status", "k", "t", "reps"],
                "properties": {
                    "kind": {"enum": ["generation", "search"]},
                    "subject": {"enum": ["stack", "nbit", "hash", "indexed", "full"]},
                    "status": {"enum": ["ok", "skipped", "error"]},
                    "k": {"type": "integer"},
                    "t": {"type": "integer"},
                    "v": {"type": ["string", "null"]},
                    "reps": {"type": "integer"},
                    "count": {"type": ["integer", "null"]},
                    "time_min_s": {"type": ["number", "null"]},
                    "time_median_s": {"type": ["number", "null"]},
                    "time_max_s": {"type": ["number", "null"]},
                    "build_s": {"type": ["number", "null"]},
                    "rows_built": {"type": ["integer", "null"]},
                    "queries": {"type": ["integer", "null"]},
                    "bucket_lookups": {"type": ["integer", "null"]},
                    "elements_scanned": {"type": ["integer", "null"]},
                    "note": {"type": ["string", "null"]},
                },
            },
        },
    },
}


def _cpu_description() -> str:
    try:
        with open("/proc/cpuinfo", "r", encoding="utf-8") as fh:
            for line in fh:
                if line.lower().startswith("model name"):
                    name = line.partition(":")[2].strip()
                    if name and name.lower() != "unknown":
                        return name
    except OSError:
        pass
    return platform.processor() or platform.machine() or "unknown"


def environment_stamp() -> dict[str, str]:
    return {
        "os": platform.platform(),
        "cpu": _cpu_description(),
        "python": platform.python_version(),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }


@dataclass
class BenchRecord:
    kind: str
    subject: str
    k: int
    t: int
    status: str = "ok"
    v: str | None = None
    reps: int = 0
    count: int | None = None
    time_min_s: float | None = None
    time_median_s: float | None = None
    time_max_s: float | None = None
    build_s: float | None = None
    rows_built: int | None = None
    queries: int | None = None
    bucket_lookups: int | None = None
    elements_scanned: int | None = None
    note: str | None = None


@dataclass
class BenchReport:
    environment: dict[str, str] = field(default_factory=environment_stamp)
    records: list[BenchRecord] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"environment": dict(self.environment),
                "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in self.records:
            row = asdict(record)
            writer.writerow({col: ("" if row[col] is None else row[col]) for col in CSV_COLUMNS})
        return buf.getvalue()

    def write_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_csv())


def _timed_pass(iterator) -> tuple[float, int]:
    start = time.perf_counter()
    n = sum(1 for _ in iterator)
    return time.perf_counter() - start, n


def _time_stats(record: BenchRecord, times: Sequence[float]) -> None:
    record.reps = len(times)
    record.time_min_s = min(times)
    record.time_median_s = statistics.median(times)
    record.time_max_s = max(times)


def run_generation_bench(
    k_list: Iterable[int],
    t_list: Iterable[int],
    reps: int = 3,
    *,
    warmup: int = 3,
    budget_s: float = 120.0,
    include_nbit: bool = True,
    nbit_max_k: int = DEFAULT_NBIT_MAX_K,
) -> BenchReport:
    """Time streaming generation for every (k, t) case in the sweep.

    Each timed pass consumes the full stream and counts what it produced.
    A case is pre-skipped when its combination count can't plausibly fit
    ``budget_s`` at :data:`PRESKIP_RATE`; a case whose first timed pass
    overruns the budget keeps that measurement but skips further reps.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    report = BenchReport()
    for k in k_list:
        for t in t_list:
            total = count_combinations(k, t)  # validates (k, t)
            record = BenchRecord(kind="generation", subject="stack", k=k, t=t)
            report.records.append(record)
            if total > budget_s * PRESKIP_RATE:
                record.status = "skipped"
                record.note = (
                    f"C({k},{t})={total} exceeds the {budget_s:.0f}s budget "
                    f"at an assumed {PRESKIP_RATE}/s"
                )
            else:
                _time_generation_case(
                    record, lambda: iter_combinations_stack(k, t), total,
                    reps, warmup, budget_s,
                )

            if not include_nbit:
                continue
            nrecord = BenchRecord(kind="generation", subject="nbit", k=k, t=t)
            report.records.append(nrecord)
            if k > min(nbit_max_k, NBIT_MAX_WIDTH):
                nrecord.status = "skipped"
                nrecord.note = (
                    f"2^{k} masks exceed the n-bit budget (max k={min(nbit_max_k, NBIT_MAX_WIDTH)}); "
                    f"hard width limit is {NBIT_MAX_WIDTH}"
                )
            else:
                _time_generation_case(
                    nrecord, lambda: iter_combinations_nbit(k, t), total,
                    reps, warmup, budget_s,
                )
    return report


def _time_generation_case(record, make_stream, total, reps, warmup, budget_s) -> None:
    times: list[float] = []
    for _ in range(warmup):
        _timed_pass(make_stream())
    for rep in range(reps):
        elapsed, n = _timed_pass(make_stream())
        times.append(elapsed)
        if n != total:
            record.status = "error"
            record.note = f"stream produced {n}, expected {total}"
            return
        if elapsed > budget_s and rep + 1 < reps:
            record.note = f"budget exceeded after rep {rep + 1}; remaining reps skipped"
            break
    record.count = total
    _time_stats(record, times)


class _TimingStore:
    """Store proxy that records the wall time of each coverage query."""

    def __init__(self, store):
        self._store = store
        self.query_times: list[float] = []

    @property
    def spec(self):
        return self._store.spec

    def coverage_count(self, row):
        start = time.perf_counter()
        n = self._store.coverage_count(row)
        self.query_times.append(time.perf_counter() - start)
        return n

    def mark_covered(self, row):
        return self._store.mark_covered(row)

    def remaining(self):
        return self._store.remaining()


@dataclass(frozen=True)
class SearchBenchConfig:
    """Workload shape for the search benchmark.

    The greedy run is capped at ``max_rows`` iterations so the measurement
    happens while the store is still full (the regime the headline
    max-query-time metric cares about) and finishes in bounded time;
    candidates_per_row * max_rows queries are issued, the first
    ``warmup_queries`` discarded.
    """

    seed: int = 0
    candidates_per_row: int = 10
    max_rows: int = 10
    warmup_queries: int = 3
    max_elements: int = DEFAULT_MAX_ELEMENTS


def run_search_bench(
    spec: CoveringArraySpec,
    mechanisms: Sequence[StoreMechanism] = tuple(StoreMechanism),
    reps: int = 1,
    *,
    config: SearchBenchConfig | None = None,
) -> BenchReport:
    """Per mechanism: build the store, run the capped greedy workload, time every query."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    cfg = config or SearchBenchConfig()
    report = BenchReport()
    v_text = spec.to_string().partition("v=")[2]
    for mechanism in mechanisms:
        record = BenchRecord(
            kind="search", subject=mechanism.value, k=spec.k, t=spec.t, v=v_text,
        )
        report.records.append(record)
        times: list[float] = []
        builds: list[float] = []
        try:
            for _ in range(reps):
                start = time.perf_counter()
                store = build_store(spec, mechanism, max_elements=cfg.max_elements)
                builds.append(time.perf_counter() - start)
                record.count = store.remaining()
                timed = _TimingStore(store)
                greedy_cfg = GreedyConfig(
                    candidates_per_row=cfg.candidates_per_row,
                    rng_seed=cfg.seed,
                    max_rows=cfg.max_rows,
                )
                try:
                    suite = run_greedy(timed, greedy_cfg)
                    record.rows_built = len(suite.rows)
                except IncompleteCoverageError as exc:
                    # Expected: the row cap exists precisely to bound the workload.
                    record.rows_built = len(exc.partial_suite.rows)
                times.extend(timed.query_times[cfg.warmup_queries:])
                counters = store.counters
                record.bucket_lookups = counters.bucket_lookups
                record.elements_scanned = counters.elements_scanned
        except CapacityError as exc:
            record.status = "error"
            record.note = str(exc)
            continue
        record.queries = len(times)
        record.build_s = statistics.median(builds)
        if times:
            _time_stats(record, times)
            record.reps = reps
    return report
