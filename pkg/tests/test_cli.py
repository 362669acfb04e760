"""Command-line interface: subcommand behavior, the exit-code contract,
class-expression parsing, and file round-trips."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from cycpois import cli
from cycpois.coalg import builtin, coalgebra_from_data, load_coalgebra
from cycpois.freealg import TruncatedAlgebra

F = Fraction

EXAMPLES = Path(__file__).resolve().parent.parent / "examples"


@pytest.fixture(scope="module")
def E1():
    return TruncatedAlgebra(builtin("E1_symplectic_pair(1)"), 4)


@pytest.fixture
def corrupted_file(tmp_path):
    data = builtin("E1_symplectic_pair(1)").to_data()
    for entry in data["pairing"]:
        if entry["left"] == "y1":
            entry["coeff"] = "1"  # break skew-symmetry of the pairing
    path = tmp_path / "corrupted.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestValidate:
    def test_builtin_files_pass(self, capsys):
        for name in ("e1.toml", "e2.toml"):
            assert cli.main(["validate", str(EXAMPLES / name)]) == 0
            out = capsys.readouterr().out
            assert "all 8 coalgebra identities hold" in out

    def test_builtin_names_accepted(self, capsys):
        assert cli.main(["validate", "E2_two_stage"]) == 0
        assert "all 8" in capsys.readouterr().out

    def test_corrupted_pairing_fails_with_witness(self, corrupted_file,
                                                  capsys):
        assert cli.main(["validate", corrupted_file]) == 1
        assert "FAILED" in capsys.readouterr().out

    def test_missing_file_is_input_error(self, capsys):
        assert cli.main(["validate", "no_such_file.toml"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_file_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text("name = [unbalanced")
        assert cli.main(["validate", str(bad)]) == 2
        assert "error:" in capsys.readouterr().err


class TestRoundTrip:
    @pytest.mark.parametrize("name,fname", [
        ("E1_symplectic_pair(1)", "e1.toml"),
        ("E2_two_stage", "e2.toml"),
    ])
    def test_example_files_match_builtins(self, name, fname):
        assert load_coalgebra(EXAMPLES / fname).structurally_equal(
            builtin(name))

    @pytest.mark.parametrize("name", ["E1_symplectic_pair(1)",
                                      "E2_two_stage"])
    def test_serialize_reparse(self, name):
        c = builtin(name)
        again = coalgebra_from_data(json.loads(json.dumps(c.to_data())))
        assert again.structurally_equal(c)


class TestClassExpressions:
    def test_linear_combination(self, E1):
        elem = cli.parse_class_expr("2*(x1,y1) - (y1,x1)", E1)
        assert elem.terms == {("x1", "y1"): F(2), ("y1", "x1"): F(-1)}

    def test_rational_and_implicit_coefficients(self, E1):
        elem = cli.parse_class_expr("1/2 * (x1) + (y1) - 3*(x1)", E1)
        assert elem.terms == {("x1",): F(-5, 2), ("y1",): F(1)}

    def test_cancellation(self, E1):
        elem = cli.parse_class_expr("(x1,y1) - (x1,y1)", E1)
        assert elem.terms == {}

    @pytest.mark.parametrize("expr", [
        "", "2*", "2 3*(x1)", "(x1,zz)", "(x1,y1) %", "+ -",
    ])
    def test_rejects_malformed(self, expr, E1):
        with pytest.raises(cli.InputError):
            cli.parse_class_expr(expr, E1)

    def test_rejects_overweight_word(self, E1):
        with pytest.raises(cli.InputError, match="truncation"):
            cli.parse_class_expr("(x1,y1,x1,y1,x1)", E1)


class TestCheck:
    def test_named_suite_passes(self, capsys):
        assert cli.main(["check", "bracket_skew", "--weight", "3"]) == 0
        assert "pass" in capsys.readouterr().out

    def test_module_selector(self, capsys):
        assert cli.main(["check", "freealg"]) == 0
        out = capsys.readouterr().out
        assert out.count("pass") == 5

    def test_unknown_suite_is_input_error(self, capsys):
        assert cli.main(["check", "nonsense_suite"]) == 2
        assert "no check suite" in capsys.readouterr().err

    def test_corrupted_file_fails_with_witness(self, corrupted_file,
                                               tmp_path, capsys):
        out_path = tmp_path / "report.json"
        code = cli.main(["check", "jacobi", "--weight", "3",
                         "--file", corrupted_file, "-o", str(out_path)])
        assert code == 1
        assert "witness" in capsys.readouterr().out
        # report is still written on failure
        doc = json.loads(out_path.read_text())
        failing = [c for c in doc["checks"] if c["status"] == "fail"]
        assert failing and all("witness" in c for c in failing)


class TestHomology:
    def test_cobar_window(self, capsys):
        assert cli.main(["homology", "cobar", "--range", "0..3"]) == 0
        out = capsys.readouterr().out
        assert "engines agree" in out
        assert "H_0 = 1" in out

    def test_bad_target(self, capsys):
        assert cli.main(["homology", "nonsense"]) == 2

    def test_bad_range(self, capsys):
        assert cli.main(["homology", "cobar", "--range", "3..0"]) == 2


class TestTrace:
    def test_trace_of_symplectic_class(self, capsys):
        code = cli.main(["trace", str(EXAMPLES / "e1.toml"),
                         "--class", "(x1,y1)"])
        assert code == 0
        assert "trace class on homology" in capsys.readouterr().out

    def test_non_cycle_rejected(self, capsys):
        code = cli.main(["trace", "E2_two_stage", "--class", "(a,b)"])
        assert code == 2
        assert "cycle" in capsys.readouterr().err


class TestReport:
    def test_full_report(self, tmp_path, capsys):
        out_path = tmp_path / "full.json"
        assert cli.main(["report", "--all", "-o", str(out_path)]) == 0
        doc = json.loads(out_path.read_text())
        assert doc["suite"] == "cycpois"
        assert len(doc["checks"]) == 26  # 22 registry + 4 homology targets
        assert all(c["status"] == "pass" for c in doc["checks"])
