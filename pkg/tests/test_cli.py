import json
import subprocess
import sys

import pytest

from apolar.cli import main
from apolar.pencil import PencilReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestHf:
    def test_power(self, capsys):
        assert run(capsys, "hf", "--r", "2", "X^4") == (0, "1 1 1 1 1\n", "")

    def test_three_variables(self, capsys):
        code, out, _ = run(capsys, "hf", "--r", "3", "X^8+Y^4*Z^4")
        assert code == 0 and out.strip() == "1 3 4 5 6 5 4 3 1"

    def test_inhomogeneous_is_parse_error(self, capsys):
        code, _, err = run(capsys, "hf", "--r", "2", "X^2+Y")
        assert code == 2 and "homogeneous" in err

    def test_variable_count_inferred(self, capsys):
        assert run(capsys, "hf", "X*Y*Z")[1].strip() == "1 3 3 1"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "hf", "--json", "X^2+Y^2")
        assert code == 0 and json.loads(out)["H"] == [1, 2, 1]

    def test_differentiation_in_small_characteristic(self, capsys):
        assert run(capsys, "hf", "--field", "gf:3", "--action", "diff", "X^4")[0] == 3

    def test_bad_field_rejected_by_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["hf", "--field", "gf:4", "X^2"])
        assert exc.value.code == 2

    def test_bad_seed_env(self, capsys, monkeypatch):
        monkeypatch.setenv("APOLAR_SEED", "seven")
        assert run(capsys, "hf", "X^2")[0] == 3


class TestLevel:
    def test_binary_quartic_pair(self, capsys):
        code, out, _ = run(capsys, "level", "--action", "diff", "X^4", "X*Y^3")
        assert code == 0
        assert out.splitlines() == ["H_A    1 2 3 3 2", "socle  0 0 0 0 2", "level  yes"]

    def test_mixed_degrees(self, capsys):
        assert run(capsys, "level", "X^4", "X^3")[0] == 2

    def test_dependent(self, capsys):
        assert run(capsys, "level", "X^4", "2*X^4")[0] == 4


class TestPencil:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "pencil", "--action", "diff", "X^4", "X*Y^3")
        assert code == 0
        rows = dict(line.split(None, 1) for line in out.splitlines())
        assert rows["H_A"] == "1 2 3 3 2"
        assert rows["H_gen"] == "1 2 3 2 1"
        assert rows["λ=0"] == "1 1 1 1 1" and rows["λ=inf"] == "1 2 2 2 1"
        assert rows["theorem1"] == "pass"

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "pencil", "--json", "--action", "diff", "--seed", "4", "X^4", "X*Y^3")
        assert code == 0
        rep = PencilReport.from_json(out)
        assert json.loads(rep.to_json()) == json.loads(out)
        assert rep.sampling["seed"] == 4

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("APOLAR_SEED", "11")
        _, out, _ = run(capsys, "pencil", "--json", "X^4", "X*Y^3")
        assert json.loads(out)["sampling"]["seed"] == 11
        _, out, _ = run(capsys, "pencil", "--json", "--seed", "2", "X^4", "X*Y^3")
        assert json.loads(out)["sampling"]["seed"] == 2

    def test_exit_codes(self, capsys):
        assert run(capsys, "pencil", "X^4", "2*X^4")[0] == 4
        assert run(capsys, "pencil", "X^4", "X^3")[0] == 2
        assert run(capsys, "pencil", "X^4", "X^")[0] == 2
        assert run(capsys, "pencil", "--field", "gf:7", "X^2", "Y^2")[0] == 3
        assert run(capsys, "pencil", "--exhaustive", "X^2", "Y^2")[0] == 3

    def test_exhaustive_small_field(self, capsys):
        code, out, _ = run(capsys, "pencil", "--json", "--field", "gf:17", "--exhaustive", "X^4", "X*Y^3")
        data = json.loads(out)
        assert code == 0 and data["sampling"]["exhaustive"] and len(data["sampling"]["lambdas"]) == 18

    def test_output_is_deterministic(self, capsys):
        first = run(capsys, "pencil", "--json", "X^3+Y*Z^2", "X*Y*Z")
        assert run(capsys, "pencil", "--json", "X^3+Y*Z^2", "X*Y*Z") == first


class TestOSequence:
    @pytest.mark.parametrize("arg,code,text", [
        ("1,3,6,8,6,4,2", 0, "true"),
        ("1,1,2", 1, "false at index 2"),
        ("1", 0, "true"),
    ])
    def test_examples(self, capsys, arg, code, text):
        assert run(capsys, "osequence", arg) == (code, text + "\n", "")

    def test_space_separated(self, capsys):
        assert run(capsys, "osequence", "1", "2", "3")[0] == 0

    def test_garbage(self, capsys):
        assert run(capsys, "osequence", "1,x")[0] == 2


class TestPaperbook:
    def test_single_case(self, capsys):
        code, out, _ = run(capsys, "verify", "paperbook", "--case", "binary-quartic")
        assert code == 0 and out.startswith("binary-quartic  pass")

    def test_config_error_for_tiny_field(self, capsys):
        code, out, _ = run(capsys, "verify", "paperbook", "--field", "gf:2", "--case", "binary-quartic",
                           "--case", "level-rejection")
        assert code == 3
        assert "config-error" in out and "level-rejection  pass" in out

    def test_failure_names_first_failing_case(self, capsys, monkeypatch):
        from apolar import cli
        from apolar.paperbook import CaseResult, Check

        fake = [
            CaseResult("a", "a", "pass", [Check("x", True)]),
            CaseResult("b", "b", "fail", [Check("x", True), Check("H_gen", False, "got 1, expected 2")]),
            CaseResult("c", "c", "fail", [Check("y", False)]),
        ]
        monkeypatch.setattr(cli, "run_paperbook", lambda config, keys: fake)
        code, out, err = run(capsys, "verify", "paperbook")
        assert code == 1
        assert "first failing case: b (H_gen: got 1, expected 2)" in err
        assert out.splitlines()[1].split()[:3] == ["b", "fail", "1/2"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "apolar", "hf", "--r", "2", "X^4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1 1 1 1 1\n"
