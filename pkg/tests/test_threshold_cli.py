"""
Tests for the command-line entry point.
"""
import json

import pytest

from threshold_cli import Output, parse_grid, parse_levels, run
from qec_errors import DomainError


def run_ok(capsys, *argv):
    status = run(list(argv))
    captured = capsys.readouterr()
    assert status == 0, captured.err
    return captured.out


class TestHelpers:

    def test_grid_includes_stop(self):
        assert parse_grid("0:1:0.25").tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert len(parse_grid("0:1:0.05")) == 21

    @pytest.mark.parametrize("text", ["0:1", "a:1:0.1", "0:1:0", "1:0:0.1"])
    def test_bad_grid(self, text):
        with pytest.raises(DomainError):
            parse_grid(text)

    def test_levels(self):
        assert parse_levels("0-4") == [0, 1, 2, 3, 4]
        assert parse_levels("0,2,3") == [0, 2, 3]
        with pytest.raises(DomainError):
            parse_levels("x")

    def test_output_numbers(self):
        out = Output(4)
        assert out.num(0.123456) == "0.1235"
        assert out.num(None) == "none"
        assert out.text() == ""


class TestCommands:

    def test_polymap_bitflip(self, capsys):
        out = run_ok(capsys, "polymap", "--code", "bitflip")
        assert out.splitlines() == [
            "x' = x^3",
            "y' = 3/2 x^2 y - 1/2 y^3",
            "z' = 3/2 z - 1/2 z^3",
        ]

    def test_polymap_json(self, capsys):
        data = json.loads(run_ok(capsys, "polymap", "--code", "steane", "--format", "json"))
        assert data["code"] == "steane"
        assert {"e": [3, 0, 0], "num": 7, "log2den": 2} in data["x"]

    def test_concat_matches_shor(self, capsys):
        composed = run_ok(capsys, "concat", "phaseflip", "bitflip")
        shor = run_ok(capsys, "polymap", "--code", "shor")
        assert composed == shor

    def test_concat_name(self, capsys):
        data = json.loads(run_ok(capsys, "concat", "five_bit", "bitflip", "bitflip", "--format", "json"))
        assert data["code"] == "five_bit(bitflip(bitflip))"

    def test_threshold_json(self, capsys):
        data = json.loads(run_ok(capsys, "threshold", "--code", "five_bit", "--format", "json"))
        assert data["p_th"] == pytest.approx(0.1376, abs=1e-4)
        assert data["period"] == 1

    def test_threshold_pretty(self, capsys):
        lines = run_ok(capsys, "threshold", "--code", "shor").splitlines()
        assert lines[0] == "code: shor (period 1, separable)"
        assert lines[1].startswith("t*_x = ")
        assert float(lines[1].split("=")[1]) == pytest.approx(0.1050, abs=1e-4)
        assert lines[-1].startswith("p_th = ")
        assert float(lines[-1].split("=")[1]) == pytest.approx(0.0748, abs=1e-4)

    def test_no_threshold(self, capsys):
        out = run_ok(capsys, "threshold", "--code", "bitflip")
        assert "no finite threshold" in out

    def test_effective_with_oracle(self, capsys):
        out = run_ok(capsys, "effective", "--code", "five_bit", "--channel", "depol:0.1", "--oracle")
        assert "oracle: max|Δ| < 1e-10" in out
        assert out.splitlines()[0] == "code: five_bit (generic path)"

    def test_effective_general_channel(self, capsys):
        data = json.loads(run_ok(
            capsys, "effective", "--code", "bitflip", "--channel", "ampdamp:0.2", "--oracle", "--format", "json",
        ))
        assert data["oracle_max_deviation"] < 1e-10
        assert data["matrix"][0] == [1.0, 0.0, 0.0, 0.0]

    def test_oracle_refuses_recipes(self, capsys):
        assert run(["effective", "--code", "shor", "--channel", "depol:0.1", "--oracle"]) == 1
        assert "dense oracle" in capsys.readouterr().err

    def test_iterate(self, capsys):
        lines = run_ok(capsys, "iterate", "--code", "bitflip", "--channel", "diag:0.9,0.9,0.9", "--levels", "2")
        rows = lines.splitlines()
        assert rows[0] == "level 0: [0.9, 0.9, 0.9]"
        assert rows[2].startswith("level 2: [0.38742")

    def test_curves_csv(self, capsys, tmp_path):
        path = tmp_path / "curves.csv"
        assert run(["curves", "--code", "steane", "--grid", "0:0.2:0.1", "--levels", "0,1", "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "gamma_t,level,x,y,z"
        assert len(lines) == 1 + 3 * 2
        assert capsys.readouterr().out == ""

    def test_leading_order(self, capsys):
        data = json.loads(run_ok(capsys, "leading-order", "--code", "five-bit", "--format", "json"))
        assert data["estimate"] == pytest.approx(0.1)
        assert data["correctable_prob"]["2"] == "-10"
        assert data["underestimate"] == pytest.approx(0.27, abs=0.01)

    def test_channel_convert(self, capsys):
        data = json.loads(run_ok(capsys, "channel-convert", "--channel", "pauli:0.1,0.1,0.1", "--format", "json"))
        assert data["diagonal"] == pytest.approx([0.6, 0.6, 0.6])
        assert data["worst_case_fidelity"] == pytest.approx(0.8)

    def test_validate_spec_file(self, capsys, tmp_path):
        path = tmp_path / "code.json"
        path.write_text(json.dumps({
            "name": "mine", "n": 3, "generators": ["+ZZI", "+IZZ"], "logical_x": "+XXX", "logical_z": "+ZZZ",
        }))
        assert run_ok(capsys, "validate", "--spec", str(path)).strip() == "code mine: n=3 valid"


class TestExitCodes:

    def test_unphysical_channel(self, capsys):
        assert run(["validate", "--channel", "diag:1,1,-1"]) == 1
        assert "x+y-z <= 1" in capsys.readouterr().err

    @pytest.mark.parametrize("literal", ["diag:nan,nan,nan", "pauli:nan,0,0"])
    def test_non_finite_channel(self, capsys, literal):
        assert run(["validate", "--channel", literal]) == 1
        captured = capsys.readouterr()
        assert "non-finite" in captured.err
        assert captured.out == ""

    def test_unwritable_output(self, capsys, tmp_path):
        target = tmp_path / "missing" / "x.txt"
        assert run(["polymap", "--code", "bitflip", "--out", str(target)]) == 1
        assert capsys.readouterr().err.startswith("error: ")
        assert not target.exists()

    def test_bad_spec(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"name": "bad", "n": 3}')
        assert run(["validate", "--spec", str(path)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_negative_levels(self, capsys):
        assert run(["iterate", "--code", "bitflip", "--channel", "depol:0.1", "--levels", "-1"]) == 2

    def test_validate_without_target(self, capsys):
        assert run(["validate"]) == 2

    def test_unknown_command(self, capsys):
        assert run(["explode"]) == 2

    def test_code_and_spec_are_exclusive(self, capsys):
        assert run(["polymap", "--code", "bitflip", "--spec", "x.json"]) == 2

    def test_non_diagonal_iterate(self, capsys):
        assert run(["iterate", "--code", "bitflip", "--channel", "ampdamp:0.1"]) == 1


class TestDocumentedInvocations:

    def test_five_bit_oracle(self, capsys):
        out = run_ok(capsys, "effective", "--code", "five_bit", "--channel", "diag:0.9,0.9,0.9", "--oracle")
        assert "oracle: max|Δ| < 1e-10" in out

    def test_shor_threshold_axes(self, capsys):
        data = json.loads(run_ok(capsys, "threshold", "--code", "shor", "--format", "json"))
        assert data["t_star"]["x"] == pytest.approx(0.10503, abs=1e-4)
        assert data["t_star"]["z"] == pytest.approx(0.3151, abs=1e-4)
        assert data["t_star"]["y"] == pytest.approx(data["t_star"]["x"])

    def test_output_is_deterministic(self, capsys):
        argv = ("curves", "--code", "five_bit", "--grid", "0:0.3:0.1", "--levels", "0-2")
        assert run_ok(capsys, *argv) == run_ok(capsys, *argv)
