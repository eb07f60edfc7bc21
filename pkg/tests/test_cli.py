import json

import pytest

from towerlab.cli import run


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestDims:
    def test_brauer_dims_json_exact(self, capsys):
        code, out, _ = capture(capsys, ["dims", "--tower", "brauer", "--n", "3", "--format", "json"])
        assert code == 0
        assert out.strip() == '{"tower":"brauer","n":3,"dim":15}'

    def test_tl_dims(self, capsys):
        code, out, _ = capture(capsys, ["dims", "--tower", "tl", "--n", "4", "--format", "json"])
        assert code == 0
        assert json.loads(out) == {"tower": "tl", "n": 4, "dim": 14}


class TestUsage:
    def test_jm_n_zero_is_usage_error(self, capsys):
        code, _, err = capture(capsys, ["jm", "--tower", "bmw", "--n", "0"])
        assert code == 2
        assert "usage error" in err

    def test_missing_tower(self, capsys):
        code, _, err = capture(capsys, ["jm", "--n", "2"])
        assert code == 2

    def test_specialized_needs_all_values(self, capsys):
        code, _, err = capture(
            capsys, ["jm", "--tower", "bmw", "--n", "2", "--mode", "specialized", "--set", "q=2"]
        )
        assert code == 2
        assert "rho" in err

    def test_bridge_needs_tl(self, capsys):
        code, _, err = capture(capsys, ["bridge", "--tower", "brauer", "--n", "3"])
        assert code == 2


class TestRuns:
    def test_jm_sym_text(self, capsys):
        code, out, _ = capture(capsys, ["jm", "--tower", "sym", "--n", "3"])
        assert code == 0
        assert "summary:" in out and "failed" in out
        assert "FAIL" not in out

    def test_spectrum_json_schema(self, capsys):
        code, out, _ = capture(
            capsys, ["spectrum", "--tower", "tl", "--n", "3", "--format", "json"]
        )
        assert code == 0
        data = json.loads(out)
        assert data["meta"] == {"tower": "tl", "n": 3, "mode": "symbolic", "params": {}}
        assert data["summary"]["failed"] == 0
        assert all(set(c) == {"name", "vertex", "pass", "witness"} for c in data["checks"])

    def test_csv_columns(self, capsys):
        code, out, _ = capture(
            capsys, ["jm", "--tower", "hecke", "--n", "2", "--format", "csv"]
        )
        assert code == 0
        header = out.splitlines()[0]
        assert header == "tower,n,vertex,check,pass,witness"

    def test_all_tl_specialized(self, capsys):
        code, out, _ = capture(
            capsys,
            [
                "all",
                "--tower",
                "tl",
                "--n",
                "3",
                "--mode",
                "specialized",
                "--set",
                "qhalf=5/3",
                "--format",
                "json",
            ],
        )
        assert code == 0
        data = json.loads(out)
        assert data["meta"]["mode"] == "specialized"
        assert data["summary"]["failed"] == 0

    def test_determinism_byte_identical(self, capsys):
        argv = ["spectrum", "--tower", "brauer", "--n", "2", "--format", "json"]
        _, out1, _ = capture(capsys, argv)
        _, out2, _ = capture(capsys, argv)
        assert out1 == out2

    def test_genericity_violation_exit_two(self, capsys):
        # delta = 0 is rejected outright by the context guard
        code, _, err = capture(
            capsys,
            ["spectrum", "--tower", "brauer", "--n", "2", "--mode", "specialized", "--set", "delta=0"],
        )
        assert code == 2
        assert "delta" in err

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("tower=tl\nn=3\nmode=specialized\nqhalf=5/3\nformat=json\n")
        code, out, _ = capture(capsys, ["jm", "--config", str(cfg)])
        assert code == 0
        assert json.loads(out)["meta"]["mode"] == "specialized"

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code = run(["jm", "--tower", "sym", "--n", "2", "--format", "json", "--output", str(target)])
        capsys.readouterr()
        assert code == 0
        assert json.loads(target.read_text())["summary"]["failed"] == 0
