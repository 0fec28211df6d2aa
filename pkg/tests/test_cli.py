import json

import pytest

from grammarcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


class TestDerive:
    def test_text(self, capsys):
        assert run(capsys, "derive", "--grammar", "ext_peaks", "--word", "x", "--n", "3")[:2] == (
            0, "x*y^3 + 5*x^3*y")

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "derive", "--grammar", "lah_signless",
                           "--word", "z", "--n", "2")
        assert code == 0 and json.loads(out)["result"] == "2*x^3*z + x^4*z"

    def test_format_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "derive", "--format", "json", "--grammar", "eulerian",
                           "--word", "x", "--n", "1")
        assert json.loads(out)["result"] == "x*y"

    def test_grammar_file(self, capsys, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# andre\nx -> x*y\ny -> x\n")
        assert run(capsys, "derive", "--grammar", str(f), "--word", "y", "--n", "3")[1] == "x^2 + x*y^2"

    @pytest.mark.parametrize("argv", [
        ["derive", "--grammar", "nope", "--word", "x", "--n", "1"],
        ["derive", "--grammar", "eulerian", "--word", "x +", "--n", "1"],
        ["derive", "--grammar", "eulerian", "--word", "x", "--n", "-1"],
    ])
    def test_bad_input(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and "error" in err


class TestEgf:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "egf", "--grammar", "eulerian", "--word", "x", "--order", "2")
        assert out.splitlines() == ["0: x", "1: x*y", "2: x*y^2 + x^2*y"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "egf", "--grammar", "andre", "--word", "y",
                           "--order", "3")
        data = json.loads(out)
        assert data["order"] == 3 and len(data["coeffs"]) == 4

    def test_non_unit_word_is_fine(self, capsys):
        assert run(capsys, "egf", "--grammar", "aux_uv", "--word", "u^-1*v", "--order", "1")[0] == 0


class TestEnumerate:
    def test_family(self, capsys):
        assert run(capsys, "enumerate", "--family", "andre", "--n", "3")[1] == "x^2 + x*y^2"
        assert run(capsys, "enumerate", "--family", "peaks", "--n", "3")[1] == "x*y^3 + 5*x^3*y"
        assert run(capsys, "enumerate", "--family", "stirling", "--n", "2")[1] == "x*y^4 + 2*x^2*y^3"

    def test_triangle_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "enumerate", "--triangle", "T", "--max-n", "4")
        assert json.loads(out) == {"name": "T", "rows": {"1": [1], "2": [1, 1], "3": [1, 5], "4": [1, 18, 5]}}

    def test_triangles_text(self, capsys):
        assert run(capsys, "enumerate", "--triangle", "A", "--max-n", "3")[1].splitlines()[-1] == "3: 1 4 1"
        assert run(capsys, "enumerate", "--triangle", "C", "--max-n", "3")[1].splitlines()[-1] == "3: 1 8 6"
        assert run(capsys, "enumerate", "--triangle", "L", "--max-n", "3")[1].splitlines()[-1] == "3: 6 6 1"

    def test_missing_args(self, capsys):
        assert run(capsys, "enumerate", "--family", "eulerian")[0] == 2
        assert run(capsys, "enumerate", "--triangle", "A")[0] == 2

    def test_out_of_range(self, capsys):
        assert run(capsys, "enumerate", "--family", "eulerian", "--n", "20")[0] == 2


class TestVerify:
    def test_pass(self, capsys, tmp_path):
        report = tmp_path / "r.json"
        code, out, _ = run(capsys, "verify", "--suite", "morphism", "--max-n", "3", "--report", str(report))
        assert code == 0
        assert out.splitlines()[-1] == "5/5 checks passed"
        assert json.loads(report.read_text())["passed"] is True

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "recurrences", "--max-n", "4")
        assert code == 0 and json.loads(out)["passed"] is True

    def test_failure_exit_code(self, capsys, monkeypatch):
        from grammarcalc import suites
        from grammarcalc.report import Check

        monkeypatch.setitem(suites.SUITES, "cyclic", lambda n, o: [Check("cyclic", "rigged", False)])
        code, out, _ = run(capsys, "verify", "--suite", "cyclic")
        assert code == 1 and out.startswith("FAIL")

    def test_bad_bounds(self, capsys):
        assert run(capsys, "verify", "--max-n", "99")[0] == 2

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2


class TestBijection:
    def test_phi_psi(self, capsys):
        assert run(capsys, "bijection", "phi", "--perm", "5,3,4,6,7,2,1")[1] == "0,1,2,0,4,2,2"
        assert run(capsys, "bijection", "psi", "--tree", "0,1,2,0,4,2,2")[1] == "5,3,4,6,7,2,1"
        assert run(capsys, "bijection", "phi", "--perm", "1")[1] == "0"

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "bijection", "phi", "--perm", "2,1,3")
        tree = json.loads(out)
        assert tree["n"] == 3
        _, out, _ = run(capsys, "--format", "json", "bijection", "psi", "--tree", json.dumps(tree))
        assert json.loads(out) == {"perm": [2, 1, 3]}

    def test_trace(self, capsys):
        _, out, _ = run(capsys, "bijection", "phi", "--perm", "5,3,4,6,7,2,1", "--trace")
        lines = out.splitlines()
        assert lines[0].split() == ["k", "M_k", "i_k", "J_k"]
        assert lines[-2].split() == ["7", "{4}", "4", "{1,4}"]
        assert lines[-1] == "0,1,2,0,4,2,2"

    def test_trace_json(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "bijection", "phi", "--perm", "2,1", "--trace")
        data = json.loads(out)
        assert data["trace"][0]["M"] is None and len(data["trace"]) == 2

    @pytest.mark.parametrize("argv", [
        ["bijection", "phi", "--perm", "1,1"],
        ["bijection", "phi", "--perm", "1,x"],
        ["bijection", "phi"],
        ["bijection", "psi", "--tree", "0,3,1"],
        ["bijection", "psi", "--tree", '{"n": 5, "parents": [0, 1]}'],
    ])
    def test_bad_input(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2
