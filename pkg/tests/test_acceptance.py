"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS line on success (run with ``pytest -s`` to see
them; a failing criterion shows up as a plain pytest failure). Wall-time
budgets are asserted inside the tests themselves.
"""

import itertools
import json
import random
import statistics
import time

from cakit.bench import SearchBenchConfig, run_search_bench
from cakit.cli import main as cli_main
from cakit.combgen import count_combinations, generate_nbit, generate_stack, iter_combinations_stack
from cakit.model import CoveringArraySpec
from cakit.store import StoreMechanism, build_store, projected_element_count

ALL_MECHS = (StoreMechanism.HASH, StoreMechanism.INDEXED, StoreMechanism.FULL_SCAN)


class _Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()

    def elapsed(self):
        return time.perf_counter() - self.start

    def check(self):
        elapsed = self.elapsed()
        assert elapsed < self.seconds, f"budget exceeded: {elapsed:.1f}s >= {self.seconds}s"
        return elapsed


def _report(n, description, budget):
    print(f"ACCEPTANCE {n} PASS ({budget.elapsed():.2f}s / {budget.seconds:.0f}s): {description}")


def test_criterion_1_smallest_pairwise_output():
    budget = _Budget(1.0)
    assert generate_stack(3, 2).combos == ((0, 1), (0, 2), (1, 2))
    budget.check()
    _report(1, "generate_stack(3,2) == [(0,1),(0,2),(1,2)] in order", budget)


def test_criterion_2_oracle_equivalence_up_to_k16():
    budget = _Budget(30.0)
    for k in range(1, 17):
        for t in range(1, k + 1):
            assert generate_stack(k, t).combos == generate_nbit(k, t).combos, (k, t)
    budget.check()
    _report(2, "stack == sorted nbit element-for-element for all 1 <= t <= k <= 16", budget)


def test_criterion_3_streaming_count_identities():
    budget = _Budget(60.0)
    cases = [(20, t) for t in range(2, 7)] + [(100, t) for t in range(2, 5)] + [(400, 2)]
    for k, t in cases:
        assert sum(1 for _ in iter_combinations_stack(k, t)) == count_combinations(k, t), (k, t)
    assert count_combinations(400, 2) == 79800
    budget.check()
    _report(3, "streaming counts equal C(k,t) for (20,2..6), (100,2..4), (400,2); C(400,2)=79800", budget)


def test_criterion_4_generation_scale():
    outer = _Budget(121.0)
    start = time.perf_counter()
    n = sum(1 for _ in iter_combinations_stack(400, 2))
    small_elapsed = time.perf_counter() - start
    assert n == 79800
    assert small_elapsed < 1.0, f"k=400,t=2 took {small_elapsed:.3f}s"

    start = time.perf_counter()
    n = sum(1 for _ in iter_combinations_stack(100, 4))
    big_elapsed = time.perf_counter() - start
    assert n == count_combinations(100, 4)
    assert big_elapsed < 120.0, f"k=100,t=4 took {big_elapsed:.1f}s"
    _report(4, f"k=400,t=2 streamed in {small_elapsed:.3f}s (<1s); "
               f"k=100,t=4 in {big_elapsed:.1f}s (<120s)", outer)


def test_criterion_5_store_totals():
    budget = _Budget(30.0)
    small = CoveringArraySpec.from_string("t=2;k=10;v=10^10")
    assert projected_element_count(small) == 4500
    full_store = build_store(small, StoreMechanism.FULL_SCAN)
    assert full_store.remaining() == 4500
    assert sum(1 for _ in full_store.uncovered_elements()) == 4500

    big = CoveringArraySpec.from_string("t=3;k=20;v=10^20")
    store = build_store(big, StoreMechanism.HASH)
    assert store.remaining() == 1_140_000
    budget.check()
    _report(5, "store totals: 4500 for t=2,k=10,v=10^10 (cross-checked by FULL_SCAN "
               "enumeration) and 1,140,000 for t=3,k=20,v=10^20", budget)


def test_criterion_6_mechanism_equivalence_differential():
    budget = _Budget(60.0)
    rng = random.Random(20260811)
    specs = [
        CoveringArraySpec.from_string("t=2;k=10;v=10^10"),      # 4500 elements
        CoveringArraySpec.from_string("t=3;k=6;v=4^6"),         # C(6,3)*64 = 1280
        CoveringArraySpec(t=2, k=5, domains=(2, 5, 3, 4, 2)),   # mixed domains
        CoveringArraySpec(t=1, k=4, domains=(3, 1, 4, 2)),
    ]
    for spec in specs:
        assert projected_element_count(spec) <= 10**5
    sequences = 0
    for spec in itertools.cycle(specs):
        stores = {mech: build_store(spec, mech) for mech in ALL_MECHS}
        oracle = stores[StoreMechanism.FULL_SCAN]
        for _ in range(rng.randrange(3, 9)):
            row = tuple(rng.randrange(v) for v in spec.domains)
            expected = oracle.coverage_count(row)
            assert stores[StoreMechanism.HASH].coverage_count(row) == expected
            assert stores[StoreMechanism.INDEXED].coverage_count(row) == expected
            if rng.random() < 0.5:
                removed = oracle.mark_covered(row)
                assert stores[StoreMechanism.HASH].mark_covered(row) == removed
                assert stores[StoreMechanism.INDEXED].mark_covered(row) == removed
            remainings = {mech: s.remaining() for mech, s in stores.items()}
            assert len(set(remainings.values())) == 1, remainings
        sequences += 1
        if sequences >= 100:
            break
    budget.check()
    _report(6, f"{sequences} random row sequences: HASH/INDEXED/FULL_SCAN agree on every "
               "coverage_count, mark_covered, remaining", budget)


def test_criterion_7_relative_search_performance():
    budget = _Budget(600.0)
    spec = CoveringArraySpec.from_string("t=3;k=20;v=10^20")
    config = SearchBenchConfig(seed=1, candidates_per_row=10, max_rows=10, warmup_queries=3)
    report = run_search_bench(spec, ALL_MECHS, reps=1, config=config)
    medians = {r.subject: r.time_median_s for r in report.records}
    queries = {r.subject: r.queries for r in report.records}
    assert all(q >= 30 for q in queries.values()), queries
    assert medians["hash"] < medians["indexed"] < medians["full"], medians
    budget.check()
    _report(7, "median coverage query time on t=3,k=20,v=10^20: "
               f"HASH {medians['hash'] * 1e3:.3f}ms < INDEXED {medians['indexed'] * 1e3:.3f}ms "
               f"< FULL_SCAN {medians['full'] * 1e3:.3f}ms "
               f"({min(queries.values())} queries per mechanism)", budget)


def test_criterion_8_end_to_end_cli(tmp_path, capsys):
    budget = _Budget(60.0)
    spec_text = "t=2;k=10;v=10^10"
    csv_texts = []
    n_rows = None
    for mech in ("hash", "indexed", "full"):
        out = tmp_path / f"suite-{mech}.csv"
        code = cli_main([
            "generate-ca", "--spec", spec_text, "--mech", mech,
            "--seed", "2026", "--candidates", "20", "--out", str(out),
        ])
        assert code == 0
        code = cli_main(["verify-ca", "--spec", spec_text, "--suite", str(out)])
        assert code == 0
        verify_line = capsys.readouterr().out.strip().splitlines()[-1]
        assert "missing=0" in verify_line
        csv_texts.append(out.read_text())
        meta = json.loads((tmp_path / f"suite-{mech}.csv.meta.json").read_text())
        n_rows = meta["rows"]
        assert n_rows >= 100  # v^t lower bound
    assert csv_texts[0] == csv_texts[1] == csv_texts[2]
    budget.check()
    _report(8, f"generate-ca + verify-ca round trip on {spec_text}: complete coverage, "
               f"N={n_rows} >= 100, identical suites across mechanisms", budget)


def test_criterion_9_conservation_under_random_marks():
    budget = _Budget(30.0)
    rng = random.Random(987)
    steps_done = 0
    while steps_done < 10_000:
        k = rng.randrange(2, 6)
        t = rng.randrange(1, min(k, 3) + 1)
        domains = tuple(rng.randrange(1, 5) for _ in range(k))
        spec = CoveringArraySpec(t=t, k=k, domains=domains)
        store = build_store(spec, rng.choice(ALL_MECHS))
        for _ in range(25):
            row = tuple(rng.randrange(v) for v in domains)
            before = store.remaining()
            removed = store.mark_covered(row)
            assert store.remaining() == before - removed
            steps_done += 1
    budget.check()
    _report(9, f"conservation held across {steps_done} randomized mark_covered steps", budget)
