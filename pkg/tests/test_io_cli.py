import json
import math

import numpy as np
import pytest

from keywitness import io, sweep
from keywitness.bounds import find_constants
from keywitness.cli import main, parse_cut
from keywitness.errors import InputError, ParseError
from keywitness.linalg import MultipartiteState

from oracles import random_density


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pbit_files(tmp_path, capsys):
    state, wit = tmp_path / "pbit2.json", tmp_path / "swap.json"
    assert run(capsys, "export", "--builtin", "pbit-swap", "--state", str(state),
               "--witness", str(wit))[0] == 0
    return state, wit


class TestFiles:
    def test_round_trip_bitwise(self, tmp_path, rng):
        s = MultipartiteState(random_density(8, rng), (2, 4), ("A", "B"))
        path = tmp_path / "s.json"
        io.write_state(path, s)
        back = io.read_state(path)
        np.testing.assert_array_equal(back.matrix, s.matrix)
        assert back.dims == s.dims and back.labels == s.labels
        io.write_state(tmp_path / "t.json", back)
        assert (tmp_path / "t.json").read_bytes() == path.read_bytes()

    def test_operator_round_trip(self, tmp_path, rng):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        io.write_operator(tmp_path / "u.json", m, [2, 2], ["A'", "B'"], hermitian=False)
        back, dims, labels = io.read_operator(tmp_path / "u.json")
        np.testing.assert_array_equal(back, m)
        assert dims == [2, 2] and labels == ["A'", "B'"]

    def test_syntax_error_location(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"dims": [2],\n "labels": ["A"],\n "matrix": [[[1, 0], [0, 0]], }\n')
        with pytest.raises(ParseError, match=r"bad\.json:3:\d+"):
            io.read_state(p)

    @pytest.mark.parametrize("doc,field", [
        ({"labels": ["A"], "matrix": [[[1, 0]]]}, "dims"),
        ({"dims": [1], "labels": ["A"]}, "matrix"),
        ({"dims": [2], "labels": ["A"], "matrix": [[[1, 0], [0]], [[0, 0], [0, 0]]]},
         r"matrix\[0\]\[1\]"),
        ({"dims": [3], "labels": ["A"], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
         "multiply"),
        ({"dims": [2], "labels": ["A"], "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
         "not a valid state"),
    ])
    def test_field_errors(self, tmp_path, doc, field):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        with pytest.raises(ParseError, match=field):
            io.read_state(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            io.read_state(tmp_path / "nope.json")


class TestBoundCommand:
    def test_single_one(self, capsys):
        code, out, _ = run(capsys, "bound", "single", "--w", "1")
        assert code == 0
        assert "value: 1.000000" in out and "certified: yes" in out

    def test_single_at_threshold(self, capsys):
        w_star = find_constants().w_star
        code, out, _ = run(capsys, "bound", "single", "--w", repr(w_star), "--json")
        assert code == 0 and abs(json.loads(out)["value"]) < 2e-3

    def test_single_methods(self, capsys):
        for m in ("central", "weak1", "weak2", "approx"):
            code, out, _ = run(capsys, "bound", "single", "--w", "0.95", "--method", m, "--json")
            assert code == 0 and json.loads(out)["method"] == m

    def test_two(self, capsys):
        code, out, _ = run(capsys, "bound", "two", "--wx", "0.3", "--wz", "0.4")
        assert code == 0 and "note: wx + wz <= 1" in out and "certified: no" in out

    def test_two_signed_branch(self, capsys):
        code, out, _ = run(capsys, "bound", "two", "--wx", "0.95", "--wz", "-0.9", "--json")
        assert json.loads(out)["branch"] == "anticorrelated"

    def test_wwz_domain_error(self, capsys):
        code, out, err = run(capsys, "bound", "wwz", "--w", "0.6", "--wz", "0")
        assert code == 2 and out == ""
        assert err.startswith("error code=domain exit=2:") and "physicality" in err
        assert err.count("\n") == 1

    def test_input_error(self, capsys):
        code, _, err = run(capsys, "bound", "single", "--w", "1.5")
        assert code == 2 and "exit=2" in err

    def test_from_state_files(self, capsys, pbit_files):
        state, wit = pbit_files
        code, out, _ = run(capsys, "bound", "from-state", str(state), "--witness", str(wit),
                           "--json")
        rep = json.loads(out)
        assert code == 0
        assert rep["w"] == pytest.approx(1.0) and rep["value"] == pytest.approx(1.0)

    def test_from_state_builtin(self, capsys):
        code, out, _ = run(capsys, "bound", "from-state", "--builtin", "pbit-swap", "--json")
        assert code == 0 and json.loads(out)["value"] == pytest.approx(1.0)

    def test_from_state_bell(self, capsys):
        code, out, _ = run(capsys, "bound", "from-state", "--builtin", "bell", "0.97",
                           "--key-pattern", "xx", "--json")
        rep = json.loads(out)
        assert code == 0 and rep["wx"] == pytest.approx(0.96) and rep["wz"] == pytest.approx(0.96)

    def test_parse_error_exit(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code, _, err = run(capsys, "bound", "from-state", str(bad), "--witness", str(bad))
        assert code == 3 and err.startswith("error code=parse exit=3:")

    def test_needs_witness(self, capsys, pbit_files):
        code, _, err = run(capsys, "bound", "from-state", str(pbit_files[0]))
        assert code == 2 and "--witness" in err


class TestOracleCommand:
    def test_constants(self, capsys):
        code, out, _ = run(capsys, "oracle", "constants", "--json")
        c = json.loads(out)
        assert code == 0
        assert 0.9 < c["w_star"] < 0.92
        assert c["p_star"] == pytest.approx(0.89, abs=0.005)
        assert c["wz_min"] == pytest.approx(0.78, abs=0.01)

    def test_dw(self, capsys, pbit_files):
        code, out, _ = run(capsys, "oracle", "dw", "--state", str(pbit_files[0]))
        assert code == 0 and out.strip() == "1.000000"

    def test_logneg(self, capsys, pbit_files):
        code, out, _ = run(capsys, "oracle", "logneg", "--state", str(pbit_files[0]),
                           "--cut", "AA'")
        assert code == 0 and float(out) <= 0.585 + 1e-6

    def test_parse_cut(self):
        assert parse_cut("AA'") == ["A", "A'"]
        assert parse_cut("A, B'") == ["A", "B'"]
        with pytest.raises(InputError):
            parse_cut("A-B")


class TestDecompose:
    def test_pbit_swap(self, capsys):
        code, out, _ = run(capsys, "decompose", "--builtin", "pbit-swap", "--json")
        rep = json.loads(out)
        assert code == 0
        assert len(rep["terms"]) == 8 and rep["settings"] == 6 and rep["tomography"] == 81

    def test_identity_and_single(self, capsys, tmp_path):
        p = tmp_path / "op.json"
        io.write_operator(p, np.eye(4), [2, 2], ["A", "B"])
        assert "settings: 0" in run(capsys, "decompose", "--operator", str(p))[1]
        io.write_operator(p, np.diag([1.0, -1, 1, -1]), [2, 2], ["A", "B"])
        assert "settings: 1" in run(capsys, "decompose", "--operator", str(p))[1]

    def test_capacity(self, capsys, tmp_path):
        p = tmp_path / "op.json"
        io.write_operator(p, np.eye(128), [2] * 7, [f"Q{i}" for i in range(7)])
        code, _, err = run(capsys, "decompose", "--operator", str(p))
        assert code == 4 and "code=capacity" in err


class TestSweep:
    def test_fig1_crossing(self, capsys, tmp_path):
        out = tmp_path / "fig1.csv"
        assert run(capsys, "sweep", "fig1", "-o", str(out))[0] == 0
        rows = np.loadtxt(out, delimiter=",", skiprows=1)
        assert out.read_text().splitlines()[0] == "w,central,weak1,weak2"
        assert rows.shape == (500, 4)
        k = np.argmax(rows[:, 1] > 0)
        w_star = find_constants().w_star
        assert rows[k - 1, 0] <= w_star <= rows[k, 0]

    def test_fig3_excludes_lower_triangle(self, capsys):
        code, out, _ = run(capsys, "sweep", "fig3", "--steps", "21")
        rows = np.array([[float(x) for x in line.split(",")] for line in out.splitlines()[1:]])
        assert code == 0 and rows.shape == (441, 4)
        below = rows[:, 0] + rows[:, 1] <= 1
        assert np.all(rows[below, 2] <= 0)
        # lexicographic order in (wx, wz)
        assert list(map(tuple, rows[:, :2])) == sorted(map(tuple, rows[:, :2]))

    def test_fig4_physical_column(self):
        spec = sweep.SweepSpec("fig4", steps=11)
        for w, wz, v, phys in sweep.run_sweep(spec, threads=1):
            assert phys == (1.0 if (1 + wz) / 2 >= w else 0.0)
            assert math.isnan(v) == (phys == 0.0)

    def test_fig5_diff_vanishes(self):
        rows = sweep.run_sweep(sweep.SweepSpec("fig5", steps=41), threads=1)
        assert rows[-1][3] == 0.0
        assert max(abs(r[3]) for r in rows[-5:]) < 1e-12

    def test_deterministic_across_threads(self, monkeypatch):
        spec = sweep.SweepSpec("fig3", steps=15)
        texts = {sweep.format_csv(spec.columns, sweep.run_sweep(spec, threads=t))
                 for t in (1, 2, 7)}
        monkeypatch.setenv("KEYWITNESS_THREADS", "3")
        texts.add(sweep.write_sweep(spec))
        assert len(texts) == 1

    def test_bad_spec(self, capsys):
        code, _, err = run(capsys, "sweep", "fig1", "--w", "0.5", "0.2")
        assert code == 2 and "min < max" in err
        code, _, _ = run(capsys, "sweep", "fig1", "--wx", "0", "1")
        assert code == 2

    def test_thread_env(self, monkeypatch):
        monkeypatch.setenv("KEYWITNESS_THREADS", "zero")
        with pytest.raises(InputError):
            sweep.thread_count()

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "fig1", "--steps", "3",
                           "-o", str(tmp_path / "missing" / "x.csv"))
        assert code == 3 and err.startswith("error code=io")


def test_bad_builtin(capsys):
    code, _, err = run(capsys, "oracle", "dw", "--builtin", "ghz")
    assert code == 2 and "unknown builtin" in err
