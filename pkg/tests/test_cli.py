import json

import numpy as np
import pytest

from curveclust.cli import main
from curveclust.dataio import load_dataset


def run(argv):
    return main([str(a) for a in argv])


class TestGenerate:
    def test_creates_loadable_dataset(self, tmp_path, capsys):
        code = run(["generate", "sine", "--clusters", 2, "--per-cluster", 3,
                    "--length", 40, "--seed", 1, "--out", tmp_path / "ds"])
        assert code == 0
        assert "wrote 6 curves" in capsys.readouterr().out
        ds = load_dataset(tmp_path / "ds")
        assert ds.N == 6
        assert np.array_equal(np.bincount(ds.truth), [3, 3])

    def test_missing_out_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["generate", "sine"])
        assert exc.value.code == 2

    def test_unknown_kind_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["generate", "triangle", "--out", tmp_path / "ds"])
        assert exc.value.code == 2

    def test_same_seed_identical_output(self, tmp_path):
        for name in ("a", "b"):
            run(["generate", "sine", "--clusters", 2, "--per-cluster", 3,
                 "--length", 40, "--seed", 5, "--out", tmp_path / name])
        for f in ("manifest.json", "curve_0000.csv", "curve_0005.csv"):
            assert (tmp_path / "a" / f).read_bytes() == \
                (tmp_path / "b" / f).read_bytes()

    def test_warped_basis_kind(self, tmp_path):
        code = run(["generate", "warped-basis", "--clusters", 2,
                    "--per-cluster", 2, "--length", 40, "--dims", 2,
                    "--seed", 3, "--out", tmp_path / "wb"])
        assert code == 0
        ds = load_dataset(tmp_path / "wb")
        assert ds.N == 4
        assert ds.curves[0].n == 2

    def test_invalid_warp_params_exit_3(self, tmp_path):
        code = run(["generate", "sine", "--shift", 0.9, "--out", tmp_path / "x"])
        assert code == 3


class TestCluster:
    @pytest.fixture
    def easy_ds(self, tmp_path):
        # zero warp ranges: every curve in a cluster is identical, so any
        # sane method scores 100%
        out = tmp_path / "easy"
        run(["generate", "sine", "--clusters", 2, "--per-cluster", 4,
             "--length", 50, "--shift", 0, "--stretch", 1,
             "--warp-amplitude", 0, "--seed", 2, "--out", out])
        return out

    def test_kmeans_perfect_on_easy(self, easy_ds, capsys):
        code = run(["cluster", easy_ds, "--method", "kmeans", "--clusters", 2])
        assert code == 0
        assert "sca=100.0%" in capsys.readouterr().out
        labels = json.loads((easy_ds / "labels_kmeans.json").read_text())
        assert len(labels) == 8

    def test_clrr_perfect_on_easy(self, easy_ds, capsys):
        code = run(["cluster", easy_ds, "--method", "clrr", "--clusters", 2,
                    "--out", easy_ds / "out.json"])
        assert code == 0
        assert "sca=100.0%" in capsys.readouterr().out
        assert (easy_ds / "out.json").is_file()

    def test_missing_dataset_exit_3(self, tmp_path):
        code = run(["cluster", tmp_path / "nope", "--method", "kmeans",
                    "--clusters", 2])
        assert code == 3

    def test_corrupt_manifest_exit_3(self, easy_ds):
        (easy_ds / "manifest.json").write_text("{broken")
        code = run(["cluster", easy_ds, "--method", "kmeans", "--clusters", 2])
        assert code == 3

    def test_bad_cluster_count_exit_3(self, easy_ds):
        code = run(["cluster", easy_ds, "--method", "kmeans", "--clusters", 99])
        assert code == 3

    def test_unknown_method_usage_error(self, easy_ds):
        with pytest.raises(SystemExit) as exc:
            run(["cluster", easy_ds, "--method", "magic", "--clusters", 2])
        assert exc.value.code == 2


class TestBenchmark:
    ARGS = ["benchmark", "sine", "--clusters", 2, "--per-cluster", 3,
            "--length", 40, "--methods", "kmeans,lrr", "--seed", 4]

    def test_outputs_and_shapes(self, tmp_path, capsys):
        code = run(self.ARGS + ["--repeats", 2, "--out", tmp_path / "b"])
        assert code == 0
        out = capsys.readouterr().out
        assert "Method" in out and "kmeans" in out and "lrr" in out
        runs = (tmp_path / "b" / "runs.csv").read_text().splitlines()
        assert runs[0] == "method,repeat,sca,iters"
        assert len(runs) == 1 + 2 * 2  # header + methods x repeats
        assert (tmp_path / "b" / "timings.csv").is_file()
        assert (tmp_path / "b" / "summary.txt").is_file()

    def test_single_repeat_zero_std(self, tmp_path):
        run(self.ARGS + ["--repeats", 1, "--out", tmp_path / "b"])
        lines = (tmp_path / "b" / "summary.csv").read_text().splitlines()
        for line in lines[1:]:
            assert float(line.split(",")[5]) == 0.0

    def test_summary_recomputable_from_runs(self, tmp_path):
        run(self.ARGS + ["--repeats", 3, "--out", tmp_path / "b"])
        runs = {}
        for line in (tmp_path / "b" / "runs.csv").read_text().splitlines()[1:]:
            method, _, s, _ = line.split(",")
            runs.setdefault(method, []).append(float(s))
        for line in (tmp_path / "b" / "summary.csv").read_text().splitlines()[1:]:
            parts = line.split(",")
            s = runs[parts[0]]
            assert float(parts[1]) == pytest.approx(np.mean(s))
            assert float(parts[2]) == pytest.approx(np.median(s))
            assert float(parts[5]) == pytest.approx(np.std(s))

    def test_runs_csv_deterministic(self, tmp_path):
        for name in ("x", "y"):
            run(self.ARGS + ["--repeats", 2, "--out", tmp_path / name])
        assert (tmp_path / "x" / "runs.csv").read_bytes() == \
            (tmp_path / "y" / "runs.csv").read_bytes()

    def test_unknown_method_exit_3(self, tmp_path):
        code = run(["benchmark", "sine", "--methods", "sorcery",
                    "--out", tmp_path / "b"])
        assert code == 3

    def test_bad_repeats_exit_3(self, tmp_path):
        code = run(self.ARGS + ["--repeats", 0, "--out", tmp_path / "b"])
        assert code == 3
