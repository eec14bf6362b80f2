import json

import pytest

from relturan.cli import main
from relturan.graphio import read_blocked, write_ordered
from relturan.hosts import generate_host
from relturan.patterns import build_hk, monotone_p3


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.og"
    write_ordered(path, monotone_p3())
    return str(path)


@pytest.fixture
def k4_file(tmp_path):
    from relturan.hosts import complete_ordered

    path = tmp_path / "k4.og"
    write_ordered(path, complete_ordered(4))
    return str(path)


class TestClassify:
    def test_p3(self, p3_file, capsys):
        assert main(["classify", "--pattern", p3_file]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["has_monotone_p3"] is True
        assert out["chi_interval"] == 3
        assert out["classification"] == "AT_LEAST_QUARTER"

    def test_h4(self, tmp_path, capsys):
        path = tmp_path / "h4.og"
        write_ordered(path, build_hk(4))
        assert main(["classify", "--pattern", str(path)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["classification"] == "ZERO"
        assert out["chi_interval"] == 5
        assert out["hk_embedding"] is not None

    def test_missing_file_is_usage_error(self, tmp_path):
        assert main(["classify", "--pattern", str(tmp_path / "nope.og")]) == 2

    def test_malformed_file_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "bad.og"
        path.write_text("not a graph\n")
        assert main(["classify", "--pattern", str(path)]) == 2


class TestSolve:
    def test_p3_on_k4(self, p3_file, k4_file, capsys):
        assert main(["solve", "--pattern", p3_file, "--host", k4_file,
                     "--mode", "exhaustive"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["best_edges"] == 4 and out["total"] == 6

    def test_modes_agree(self, p3_file, k4_file, capsys):
        results = []
        for mode in ("exhaustive", "exact"):
            assert main(["solve", "--pattern", p3_file, "--host", k4_file,
                         "--mode", mode]) == 0
            results.append(json.loads(capsys.readouterr().out)["best_edges"])
        assert results[0] == results[1]


class TestGenHost:
    def test_roundtrip(self, tmp_path, capsys):
        out_file = tmp_path / "host.rg"
        assert main(["gen-host", "--d", "2", "--m", "4", "--seed", "3",
                     "--out", str(out_file)]) == 0
        loaded = read_blocked(out_file)
        assert loaded == generate_host(4, 2, seed=3)
        stats = json.loads(capsys.readouterr().out)
        assert stats["edges"] == loaded.num_edges()


class TestAnalyzeRichness:
    def test_blocked_host(self, tmp_path, capsys):
        out_file = tmp_path / "host.rg"
        main(["gen-host", "--d", "3", "--m", "8", "--seed", "0", "--out", str(out_file)])
        capsys.readouterr()
        assert main(["analyze-richness", "--host", str(out_file), "--alpha", "0.5"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["d"] == 3 and out["m"] == 8
        assert len(out["level_counts"]) == 3


class TestEmbedHk:
    def test_success_with_trace(self, tmp_path, capsys):
        from relturan.graphio import write_hypercube
        from relturan.hosts import complete_hypercube

        host_file = tmp_path / "cube.hg"
        write_hypercube(host_file, complete_hypercube(5))
        trace_file = tmp_path / "trace.json"
        assert main(["embed-hk", "--host", str(host_file), "--k", "2",
                     "--trace", str(trace_file)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["embedded"] is True
        trace = json.loads(trace_file.read_text())
        assert "extraction" in trace and trace["witness"] == out["witness"]

    def test_failure_exits_1(self, tmp_path, capsys):
        from relturan.graphio import write_hypercube
        from relturan.core import HypercubeGraph

        host_file = tmp_path / "sparse.hg"
        write_hypercube(host_file, HypercubeGraph(3, [(0, 4)]))
        assert main(["embed-hk", "--host", str(host_file), "--k", "3"]) == 1


class TestAppendixCheck:
    def test_pass(self, capsys):
        params = json.dumps({"alpha": "1/2", "eps": "1/5", "k": 2, "eta": "1/8", "n": 100})
        assert main(["appendix-check", "--lemma", "a1", "--params", params]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["passed"] is True

    def test_fail_exits_1(self, capsys):
        params = json.dumps({"alpha": "1/2", "eps": "1/16", "k": 2, "eta": "1/8", "n": 16})
        assert main(["appendix-check", "--lemma", "a1", "--params", params]) == 1

    def test_identity_mode(self, capsys):
        params = json.dumps({"n_max": 20})
        assert main(["appendix-check", "--lemma", "a3", "--params", params]) == 0

    def test_bad_json_is_usage_error(self):
        assert main(["appendix-check", "--lemma", "a1", "--params", "{oops"]) == 2


class TestManifest:
    def test_written_with_out_dir(self, p3_file, tmp_path, capsys):
        out_dir = tmp_path / "run"
        assert main(["classify", "--pattern", p3_file, "--out-dir", str(out_dir)]) == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["command"] == "classify"
        assert "pattern" in manifest["input_digests"]
        result = json.loads((out_dir / "result.json").read_text())
        assert result == json.loads(capsys.readouterr().out)


class TestReport:
    def test_quarter_grid(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps(
            {"experiment": "quarter-density", "m": 3, "d_values": [2, 3], "seeds": [0]}
        ))
        out_dir = tmp_path / "rep"
        assert main(["report", "--grid", str(grid), "--out-dir", str(out_dir)]) == 0
        lines = (out_dir / "report.csv").read_text().splitlines()
        assert lines[0].startswith("d,m,seed,status")
        assert len(lines) == 3
        for line in lines[1:]:
            ratio = float(line.split(",")[6])
            assert ratio >= 0.25  # constructor guarantee

    def test_empty_grid_header_only(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps({"experiment": "quarter-density", "d_values": []}))
        out_dir = tmp_path / "rep"
        assert main(["report", "--grid", str(grid), "--out-dir", str(out_dir)]) == 0
        lines = (out_dir / "report.csv").read_text().splitlines()
        assert len(lines) == 1

    def test_reproducible_bytes(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps(
            {"experiment": "local-density", "m": 2, "d_values": [2], "seeds": [1]}
        ))
        outputs = []
        for name in ("a", "b"):
            out_dir = tmp_path / name
            assert main(["report", "--grid", str(grid), "--out-dir", str(out_dir)]) == 0
            text = (out_dir / "report.csv").read_text()
            # runtime column varies between runs; compare everything else
            outputs.append([",".join(line.split(",")[:7]) for line in text.splitlines()])
        assert outputs[0] == outputs[1]

    def test_unknown_experiment_is_usage_error(self, tmp_path):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps({"experiment": "mystery"}))
        assert main(["report", "--grid", str(grid)]) == 2


class TestTileCommands:
    def test_sample_and_verify(self, p3_file, tmp_path, capsys):
        assert main(["tile-sample", "--pattern", p3_file, "--d", "6",
                     "--levels", "1,2,3,4,5,6", "--w", "4",
                     "--n-samples", "2000", "--seed", "5"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["n_samples"] == 2000
        assert len(out["per_slot_split_levels"]) == 2

        out_dir = tmp_path / "tv"
        rc = main(["tile-verify", "--pattern", p3_file, "--d", "6",
                   "--levels", "1,2,3,4,5,6", "--w", "4",
                   "--epsilon", "0.9", "--out-dir", str(out_dir)])
        assert rc in (0, 1)
        assert (out_dir / "levels.csv").exists()

    def test_unknown_flag_exits_2(self, p3_file):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--pattern", p3_file, "--bogus"])
        assert exc.value.code == 2
