import csv
import io
import json

import pytest

from coregrid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def points_file(tmp_path):
    f = tmp_path / "pts.txt"
    f.write_text("0 0 3\n1 0 2\n3 0 2\n")
    return str(f)


@pytest.fixture
def edgeless_file(tmp_path):
    f = tmp_path / "edgeless.txt"
    f.write_text("0 0 1\n5 0 1\n10 0 1\n")
    return str(f)


@pytest.fixture
def rects_file(tmp_path):
    f = tmp_path / "rects.txt"
    f.write_text("# lambda=1.5\n0 0 1 1 5\n0.9 0 1 1 4\n2 0 1 1 3\n")
    return str(f)


class TestSolve:
    def test_wis_udg(self, capsys, points_file):
        code, out, _ = run(capsys, "solve", "--problem", "wis-udg",
                           "--eps", "4", "--input", points_file)
        assert code == 0
        rep = json.loads(out)
        assert rep["objective"] == 5.0
        assert rep["feasible"] is True
        assert rep["problem"] == "wis-udg"
        assert rep["k"] == 7
        assert rep["shifts_evaluated"] == 49
        assert len(rep["best_shift"]) == 2

    def test_vc_edgeless(self, capsys, edgeless_file):
        code, out, _ = run(capsys, "solve", "--problem", "vc-udg",
                           "--eps", "1", "--input", edgeless_file)
        assert code == 0
        rep = json.loads(out)
        assert rep["size"] == 0 and rep["feasible"] is True

    def test_wis_rect_requires_lambda(self, capsys, rects_file):
        code, _, err = run(capsys, "solve", "--problem", "wis-rect",
                           "--eps", "6", "--input", rects_file)
        assert code == 2
        assert "lambda" in err

    def test_wis_rect(self, capsys, rects_file):
        code, out, _ = run(capsys, "solve", "--problem", "wis-rect", "--eps", "6",
                           "--input", rects_file, "--lambda", "1.5")
        assert code == 0
        rep = json.loads(out)
        assert rep["objective"] == 8.0 and rep["feasible"] is True

    def test_parse_error_exit_2(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("0 0 -3\n")
        code, _, err = run(capsys, "solve", "--problem", "wis-udg",
                           "--eps", "4", "--input", str(f))
        assert code == 2 and err

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, "solve", "--problem", "wis-udg",
                         "--eps", "4", "--input", "/nonexistent")
        assert code == 2

    def test_json_to_file(self, capsys, points_file, tmp_path):
        out_path = tmp_path / "rep.json"
        code, _, _ = run(capsys, "solve", "--problem", "ds-udg", "--eps", "4",
                         "--input", points_file, "--json", str(out_path))
        assert code == 0
        rep = json.loads(out_path.read_text())
        assert rep["feasible"] is True

    def test_determinism(self, capsys, points_file):
        _, out1, _ = run(capsys, "solve", "--problem", "wis-udg", "--eps", "4",
                         "--input", points_file)
        _, out2, _ = run(capsys, "solve", "--problem", "wis-udg", "--eps", "4",
                         "--input", points_file)
        a, b = json.loads(out1), json.loads(out2)
        a.pop("elapsed_ms"), b.pop("elapsed_ms")
        assert a == b


class TestOracle:
    def test_wis_udg(self, capsys, points_file):
        code, out, _ = run(capsys, "oracle", "--problem", "wis-udg",
                           "--input", points_file)
        assert code == 0
        rep = json.loads(out)
        assert rep["objective"] == 5.0 and rep["exact"] is True

    def test_ds_udg(self, capsys, points_file):
        code, out, _ = run(capsys, "oracle", "--problem", "ds-udg",
                           "--input", points_file)
        rep = json.loads(out)
        assert code == 0 and rep["size"] == 1

    def test_rect(self, capsys, rects_file):
        code, out, _ = run(capsys, "oracle", "--problem", "wis-rect",
                           "--input", rects_file, "--lambda", "1.5")
        rep = json.loads(out)
        assert code == 0 and rep["objective"] == 8.0

    def test_cap_exceeded_exit_3(self, capsys, tmp_path):
        from coregrid import InstanceFile, gen_uniform_points, write_instance
        ps = gen_uniform_points(2500, 100.0, seed=0)
        f = tmp_path / "big.txt"
        write_instance(str(f), InstanceFile("points", points=ps))
        code, _, err = run(capsys, "oracle", "--problem", "wis-udg",
                           "--input", str(f))
        assert code == 3 and err


class TestVerify:
    def test_wis_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--problem", "wis-udg", "--eps", "4",
                           "--n", "10", "--trials", "5", "--seed", "3")
        assert code == 0
        rep = json.loads(out)
        assert rep["violations"] == 0
        assert rep["ratio_max"] <= 8.0 + 1e-9

    def test_zero_trials(self, capsys):
        code, out, _ = run(capsys, "verify", "--problem", "vc-udg", "--eps", "1",
                           "--n", "8", "--trials", "0")
        assert code == 0
        assert json.loads(out)["ratio_max"] is None


class TestGenCommand:
    def test_gen_points_roundtrip(self, capsys, tmp_path):
        f = tmp_path / "g.txt"
        code, _, _ = run(capsys, "gen", "--kind", "points", "--n", "20",
                         "--box", "10", "--seed", "5", "--output", str(f))
        assert code == 0
        from coregrid import read_instance
        inst = read_instance(str(f))
        assert len(inst.points) == 20

    def test_gen_rects_needs_lambda(self, capsys, tmp_path):
        f = tmp_path / "g.txt"
        code, _, err = run(capsys, "gen", "--kind", "rects", "--n", "5",
                           "--box", "10", "--output", str(f))
        assert code == 2

    def test_gen_deterministic(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        for f in (f1, f2):
            run(capsys, "gen", "--kind", "points", "--n", "30", "--box", "12",
                "--seed", "9", "--output", str(f))
        assert f1.read_text() == f2.read_text()


class TestBench:
    def test_csv_shape(self, capsys):
        code, out, _ = run(capsys, "bench", "--problem", "wis-udg", "--eps", "4",
                           "--sizes", "200,400", "--repeats", "1", "--seed", "1")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2
        assert rows[0]["problem"] == "wis-udg"
        assert int(rows[0]["n"]) == 200 and int(rows[1]["n"]) == 400
        for row in rows:
            assert float(row["elapsed_ms"]) >= 0
            assert float(row["time_per_point_ns"]) > 0
            assert float(row["baseline_objective"]) > 0

    def test_unknown_problem_usage_error(self, capsys):
        code, _, _ = run(capsys, "bench", "--problem", "nope", "--eps", "4",
                         "--sizes", "10")
        assert code == 2
