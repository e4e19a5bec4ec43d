import json
import subprocess
import sys

import pytest

from qawa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestBasics:
    def test_presets(self, capsys):
        code, data = run_json(capsys, "presets")
        assert code == 0
        assert set(data) == {"trivial", "kC2", "kC3", "dual", "ext2"}
        assert data["ext2"]["dimension"] == 4

    def test_validate_preset(self, capsys):
        code, data = run_json(capsys, "validate-spec", "--preset", "ext2")
        assert code == 0 and data["status"] == "valid"
        assert data["dual_basis"]["th1"] == "-th2"

    def test_validate_invalid_spec(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"names": ["1"], "parity": [0], "mul": [[[[0, "1"]]]],
                                   "trace": ["0"], "unit": [[0, "1"]]}))
        code, data = run_json(capsys, "validate-spec", "--spec", str(bad))
        assert code == 1
        assert data == {"status": "invalid", "violation": "degenerate trace form",
                        "detail": data["detail"]}

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "qawa.cli", "presets"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0 and "trivial" in json.loads(proc.stdout)


class TestEval:
    def test_quadratic(self, capsys):
        code, data = run_json(capsys, "eval", "--preset", "trivial", "--z", "1", "T(1)*T(1)")
        assert code == 0
        assert data["text"] == "1 + T[2, 1]"
        assert {(tuple(t["w"]), t["coeff"]) for t in data["left_normal_form"]} == \
            {((1, 2), "1"), ((2, 1), "1")}

    def test_cyclotomic_mode(self, capsys):
        f = json.dumps({"d": 2, "coeffs": [[[0, "-1"]], []]})
        code, data = run_json(capsys, "eval", "--z", "1", "--f", f, "X(2,1)^2")
        assert code == 0
        assert data["text"] == "1 + T[2, 1] + X1*X2*T[2, 1]"
        assert len(data["reduced_form"]) == 3

    def test_slot_moves_after_t(self, capsys):
        code, data = run_json(capsys, "eval", "--preset", "dual", "--right-form",
                              'a("c", 1)*T(1)')
        assert code == 0
        assert data["left_normal_form"] == [
            {"a": [1, 0], "coeff": "1", "lambda": [0, 0], "w": [2, 1]}]
        assert data["right_normal_form"] == [
            {"a": [0, 1], "coeff": "1", "lambda": [0, 0], "w": [2, 1]}]

    def test_round_trip(self, capsys):
        expr = "2/3*T(1)*X(2,-1) + X(1)^2*Tinv(1) - 1/2"
        _, first = run_json(capsys, "eval", "--z", "3/4", expr)
        _, second = run_json(capsys, "eval", "--z", "3/4", json.dumps(first))
        assert second["left_normal_form"] == first["left_normal_form"]

    def test_file_expression(self, capsys, tmp_path):
        path = tmp_path / "expr.txt"
        path.write_text("X(1)*X(2)")
        code, data = run_json(capsys, "eval", f"@{path}")
        assert code == 0 and data["text"] == "X1*X2"

    @pytest.mark.parametrize("expr", ["Q(1)", "T(5)", "X(1, 2)", "T(1)/X(1)", "((("])
    def test_bad_expressions(self, capsys, expr):
        code, _, err = run(capsys, "eval", expr)
        assert code == 2 and "error" in err


class TestSuite:
    def test_trivial_passes(self, capsys):
        code, data = run_json(capsys, "suite", "--preset", "trivial", "--n", "2", "--z", "1")
        assert code == 0 and data["status"] == "pass"
        assert data["summary"]["failed"] == 0 and data["summary"]["total"] > 20

    def test_ext2_degeneration(self, capsys):
        code, data = run_json(capsys, "suite", "--preset", "ext2", "--n", "3", "--z", "0",
                              "--only", "relations", "--only", "degeneration")
        assert code == 0
        suites = {e["suite"] for e in data["entries"]}
        assert "degeneration" in suites
        assert any(e["check"] == "wreath-degeneration" and e["status"] == "pass"
                   for e in data["entries"])

    def test_bad_z(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["suite", "--z", "1/0"])
        assert err.value.code == 2

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, "suite", "--only", "nonsense")
        assert code == 2

    def test_deterministic(self, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            main(["suite", "--preset", "dual", "--n", "2", "--seed", "7", "--samples", "5",
                  "--only", "center", "--only", "jm", "--out", str(path)])
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


class TestGramAndMackey:
    def test_gram_identity(self, capsys):
        code, data = run_json(capsys, "gram", "--n", "1")
        assert code == 0 and data["gram"] == [["1", "0"], ["0", "1"]]
        assert data["status"] == "invertible"

    def test_gram_limit(self, capsys):
        code, _, _ = run(capsys, "gram", "--n", "3", "--max-dim", "10")
        assert code == 2

    def test_mackey(self, capsys):
        code, data = run_json(capsys, "mackey-dims", "--preset", "dual", "--n", "2")
        assert code == 0 and data["status"] == "pass"
