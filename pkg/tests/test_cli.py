import json

import pytest

from polycond.cli import main


class TestScenarioCommands:
    def test_wilkinson_json_to_file(self, tmp_path):
        out = tmp_path / "w20.json"
        code = main(["wilkinson", "--n", "20", "--format", "json", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["polycond_schema"] == 1
        assert doc["summary"]["argmax_root"] == 15

    def test_runge_cheb_csv_stdout(self, capsys):
        code = main(["runge-cheb", "--degrees", "5", "--format", "csv"])
        assert code == 0
        rows = [ln for ln in capsys.readouterr().out.splitlines()[1:] if ln]
        assert rows
        mx = max(float(ln.split(",")[2]) for ln in rows)
        assert 10**mx <= 2.5

    def test_wilkinson_scaled(self, tmp_path):
        out = tmp_path / "sym.json"
        code = main(
            [
                "wilkinson-scaled", "--n", "8", "--target", "symmetric",
                "--samples", "101", "--format", "json", "--out", str(out),
            ]
        )
        assert code == 0
        assert json.loads(out.read_text())["summary"]["zero_coeffs"] == 4

    def test_second_no_fields(self, tmp_path):
        out = tmp_path / "second.json"
        code = main(
            ["second", "--no-fields", "--samples", "201", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["summary"]["c20_monomial_argmax_x"] == 1.0


class TestPseudozeroCommand:
    def test_svg_with_two_contour_families(self, tmp_path):
        out = tmp_path / "w20.svg"
        code = main(
            [
                "pseudozeros", "--poly", "wilkinson20",
                "--levels", "1e-14,1e-18",
                "--grid", "64x64",
                "--format", "svg", "--out", str(out),
            ]
        )
        assert code == 0
        svg = out.read_text()
        assert svg.count('class="contour-level"') == 2
        # the coarse-grid field still dips below 1e-14 near the worst roots
        first_family = svg.split('class="contour-level"')[1]
        assert "<polyline" in first_family

    def test_region_and_weights_flags(self, tmp_path):
        out = tmp_path / "f.json"
        code = main(
            [
                "pseudozeros", "--poly", "roots:1,2",
                "--levels", "1e-2",
                "--grid", "16x16",
                "--region=-1,4,-2,2",
                "--weights", "1,1,1",
                "--out", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["fields"][0]["region"] == [-1.0, 4.0, -2.0, 2.0]


class TestConditionAndWitness:
    def test_condition_interval(self, capsys):
        code = main(
            [
                "condition", "--poly", "wilkinson20",
                "--interval", "0,20", "--samples", "101",
            ]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["summary"]["argmax_x"] == 20.0

    def test_witness_explicit_z(self, capsys):
        code = main(["witness", "--poly", "roots:1,2", "--z", "3/2,0"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["name"] == "witness"
        assert doc["indicator"] > 0

    def test_witness_seeded_random_z_is_deterministic(self, capsys):
        main(["witness", "--poly", "roots:1,2", "--region", "0,3,-1,1", "--seed", "5"])
        first = capsys.readouterr().out
        main(["witness", "--poly", "roots:1,2", "--region", "0,3,-1,1", "--seed", "5"])
        assert capsys.readouterr().out == first


class TestExitCodes:
    def test_unknown_subcommand_is_2(self, capsys):
        assert main(["frobnicate"]) == 2
        assert "polycond" in capsys.readouterr().err

    def test_unknown_flag_is_2(self, capsys):
        assert main(["wilkinson", "--bogus"]) == 2

    def test_bad_payload_is_2(self, capsys):
        assert main(["wilkinson", "--n", "-3"]) == 2
        assert "error" in capsys.readouterr().err

    def test_precision_error_is_3(self, capsys):
        code = main(
            [
                "pseudozeros", "--poly", "wilkinson20",
                "--levels", "1e-80", "--precision", "60", "--grid", "16x16",
            ]
        )
        assert code == 3
        assert "precision" in capsys.readouterr().err

    def test_unknown_poly_is_2(self, capsys):
        assert main(["condition", "--poly", "zorp"]) == 2

    def test_malformed_grid_is_2(self, capsys):
        assert main(["pseudozeros", "--grid", "16by16"]) == 2
