"""CLI tests: exit codes, output formats, determinism."""

import json
import subprocess
import sys

import pytest

from cakit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenCombos:
    def test_three_parameters_pairwise_lines(self, capsys):
        code, out, _ = run_cli(capsys, "gen-combos", "--k", "3", "--t", "2")
        assert code == 0
        assert out.splitlines() == ["0,1", "0,2", "1,2"]

    def test_count_only_single_combo(self, capsys):
        code, out, _ = run_cli(capsys, "gen-combos", "--k", "5", "--t", "5", "--count-only")
        assert (code, out.strip()) == (0, "1")

    def test_count_only_400_choose_2(self, capsys):
        code, out, _ = run_cli(capsys, "gen-combos", "--k", "400", "--t", "2", "--count-only")
        assert (code, out.strip()) == (0, "79800")

    def test_nbit_matches_stack(self, capsys):
        _, stack_out, _ = run_cli(capsys, "gen-combos", "--k", "6", "--t", "3")
        _, nbit_out, _ = run_cli(capsys, "gen-combos", "--k", "6", "--t", "3", "--algo", "nbit")
        assert stack_out == nbit_out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "combos.txt"
        code, out, _ = run_cli(capsys, "gen-combos", "--k", "4", "--t", "2", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().splitlines()[0] == "0,1"

    def test_invalid_kt_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "gen-combos", "--k", "3", "--t", "9")
        assert code == 2
        assert "t <= k" in err or "error" in err

    def test_nbit_size_limit_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "gen-combos", "--k", "70", "--t", "2", "--algo", "nbit")
        assert code == 3
        assert "64" in err


class TestGenerateCa:
    def test_tiny_spec_four_rows(self, capsys, tmp_path):
        out_path = tmp_path / "suite.csv"
        code, _, _ = run_cli(
            capsys, "generate-ca", "--spec", "t=2;k=2;v=2,2", "--out", str(out_path)
        )
        assert code == 0
        assert len(out_path.read_text().splitlines()) == 4
        meta = json.loads((tmp_path / "suite.csv.meta.json").read_text())
        assert meta["rows"] == 4
        assert meta["remaining"] == 0
        assert meta["mechanism"] == "hash"

    def test_bad_spec_exits_2(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "generate-ca", "--spec", "nonsense", "--out", str(tmp_path / "x.csv")
        )
        assert code == 2

    def test_zero_strength_exits_2(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "generate-ca", "--spec", "t=0;k=5;v=2^5", "--out", str(tmp_path / "x.csv")
        )
        assert code == 2

    def test_incomplete_coverage_exits_1_with_partial(self, capsys, tmp_path):
        out_path = tmp_path / "partial.csv"
        code, _, err = run_cli(
            capsys, "generate-ca", "--spec", "t=2;k=4;v=3^4",
            "--max-rows", "2", "--out", str(out_path),
        )
        assert code == 1
        assert "incomplete" in err
        meta = json.loads((tmp_path / "partial.csv.meta.json").read_text())
        assert meta["remaining"] > 0

    def test_seed_determinism_across_mechanisms(self, capsys, tmp_path):
        outputs = []
        for mech in ["hash", "indexed", "full"]:
            path = tmp_path / f"{mech}.csv"
            code, _, _ = run_cli(
                capsys, "generate-ca", "--spec", "t=2;k=4;v=2^4",
                "--mech", mech, "--seed", "9", "--out", str(path),
            )
            assert code == 0
            outputs.append(path.read_text())
        assert outputs[0] == outputs[1] == outputs[2]


class TestVerifyCa:
    def test_exhaustive_suite_passes(self, capsys, tmp_path):
        path = tmp_path / "all.csv"
        rows = [f"{a},{b},{c}" for a in range(2) for b in range(2) for c in range(2)]
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = run_cli(capsys, "verify-ca", "--spec", "t=2;k=3;v=2^3", "--suite", str(path))
        assert code == 0
        assert "missing=0" in out

    def test_empty_file_exits_1(self, capsys, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        code, out, _ = run_cli(capsys, "verify-ca", "--spec", "t=2;k=3;v=2^3", "--suite", str(path))
        assert code == 1
        assert "missing=12" in out

    def test_oa_9_2_4_3_passes(self, capsys, tmp_path):
        path = tmp_path / "oa.csv"
        rows = [
            f"{a},{b},{(a + b) % 3},{(a + 2 * b) % 3}" for a in range(3) for b in range(3)
        ]
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = run_cli(capsys, "verify-ca", "--spec", "t=2;k=4;v=3^4", "--suite", str(path))
        assert code == 0
        assert "covered=54" in out

    def test_missing_suite_file_exits_2(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "verify-ca", "--spec", "t=2;k=3;v=2^3", "--suite", str(tmp_path / "nope.csv")
        )
        assert code == 2


class TestBenchCommands:
    def test_bench_gen_reports(self, capsys, tmp_path):
        jpath, cpath = tmp_path / "g.json", tmp_path / "g.csv"
        code, _, _ = run_cli(
            capsys, "bench-gen", "--k-list", "4", "--t-list", "2",
            "--reps", "1", "--warmup", "0", "--json", str(jpath), "--csv", str(cpath),
        )
        assert code == 0
        payload = json.loads(jpath.read_text())
        assert payload["records"][0]["kind"] == "generation"
        assert cpath.read_text().startswith("kind,")

    def test_bench_search_stdout_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "bench-search", "--spec", "t=2;k=2;v=2,2",
            "--candidates", "3", "--rows", "4",
        )
        assert code == 0
        assert out.startswith("kind,")
        assert "hash" in out and "indexed" in out and "full" in out

    def test_bench_search_unknown_mechanism_exits_2(self, capsys):
        code, _, _ = run_cli(
            capsys, "bench-search", "--spec", "t=2;k=2;v=2,2", "--mechs", "sorcery"
        )
        assert code == 2


class TestParsing:
    def test_no_command_exits_2(self, capsys):
        assert run_cli(capsys, )[0] == 2

    def test_unknown_command_exits_2(self, capsys):
        assert run_cli(capsys, "frobnicate")[0] == 2

    def test_help_exits_0(self, capsys):
        assert run_cli(capsys, "--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cakit", "gen-combos", "--k", "3", "--t", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["0,1", "0,2", "1,2"]
