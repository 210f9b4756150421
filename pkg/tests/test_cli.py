import csv
import io
import json
import math

import numpy as np
import pytest

from hubbard_gap.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows, f"empty csv output: {text!r}"
    return rows


class TestSolve:
    def test_csv_record(self, capsys):
        code, out, _ = run_cli(["solve", "--u", "1"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0]) == ["u", "t", "delta", "residual", "bracket_low",
                                 "bracket_high", "evaluations",
                                 "delta_asymptotic", "rel_dev"]
        assert float(rows[0]["delta"]) == pytest.approx(0.05975543108, rel=1e-9)
        assert float(rows[0]["rel_dev"]) == pytest.approx(4.579013e-5, rel=1e-3)

    def test_json_record(self, capsys):
        code, out, _ = run_cli(["solve", "--u", "1", "--format", "json"],
                               capsys)
        assert code == 0
        record = json.loads(out)
        assert record["delta"] == pytest.approx(0.05975543108, rel=1e-9)
        assert record["residual"] < 1e-12

    def test_scaling(self, capsys):
        _, out1, _ = run_cli(["solve", "--u", "1", "--format", "json"], capsys)
        _, out2, _ = run_cli(["solve", "--u", "2", "--t", "2",
                              "--format", "json"], capsys)
        d1 = json.loads(out1)["delta"]
        d2 = json.loads(out2)["delta"]
        assert d2 == pytest.approx(2.0 * d1, rel=1e-10)

    def test_negative_coupling_exits_2(self, capsys):
        code, _, err = run_cli(["solve", "--u", "-1"], capsys)
        assert code == 2
        assert "coupling must be positive" in err


class TestSweep:
    def test_monotone_rel_dev(self, capsys):
        code, out, _ = run_cli(["sweep", "--u-min", "0.3", "--u-max", "2",
                                "--points", "8", "--log-spacing"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0]) == ["u", "delta_numeric", "delta_asymptotic",
                                 "rel_dev", "bound_scale"]
        rel_devs = [float(r["rel_dev"]) for r in rows]
        assert rel_devs == sorted(rel_devs)  # grows with u, shrinks toward weak coupling

    def test_single_point_matches_solve(self, capsys):
        _, sweep_out, _ = run_cli(["sweep", "--u-min", "1", "--u-max", "1",
                                   "--points", "1"], capsys)
        _, solve_out, _ = run_cli(["solve", "--u", "1"], capsys)
        sweep_delta = float(parse_csv(sweep_out)[0]["delta_numeric"])
        solve_delta = float(parse_csv(solve_out)[0]["delta"])
        assert sweep_delta == solve_delta

    def test_zero_points_exits_2(self, capsys):
        code, _, err = run_cli(["sweep", "--u-min", "0.5", "--u-max", "1",
                                "--points", "0"], capsys)
        assert code == 2
        assert "points" in err


class TestDos:
    def test_table(self, capsys):
        code, out, _ = run_cli(["dos", "--points", "5", "--eps-min", "0.5",
                                "--eps-max", "4.0"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0]) == ["epsilon", "n0", "n0_asymptotic", "abs_diff",
                                 "scaled_remainder"]
        by_eps = {float(r["epsilon"]): r for r in rows}
        assert float(by_eps[4.0]["n0"]) == 0.0
        assert float(by_eps[3.125]["n0"]) > 0.0
        assert by_eps[4.0]["n0_asymptotic"] == "nan"

    def test_scaled_remainder_bounded(self, capsys):
        _, out, _ = run_cli(["dos", "--points", "12", "--eps-min", "0.001",
                             "--eps-max", "0.1"], capsys)
        ratios = [float(r["scaled_remainder"]) for r in parse_csv(out)]
        assert max(ratios) < 5e-3

    def test_trapezoid_mass(self, capsys):
        _, out, _ = run_cli(["dos", "--points", "801", "--eps-min", "0.001",
                             "--eps-max", "4.0"], capsys)
        rows = parse_csv(out)
        eps = np.array([float(r["epsilon"]) for r in rows])
        n0 = np.array([float(r["n0"]) for r in rows])
        mass = float(np.sum(0.5 * (n0[1:] + n0[:-1]) * np.diff(eps)))
        assert mass == pytest.approx(0.5, abs=3e-3)

    def test_validation(self, capsys):
        code, _, _ = run_cli(["dos", "--points", "5", "--eps-min", "-1",
                              "--eps-max", "2"], capsys)
        assert code == 2


class TestConstants:
    def test_json_payload(self, capsys):
        code, out, _ = run_cli(["constants", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["a0_exact"] == pytest.approx(
            math.log(2.0) ** 2 / math.pi ** 2 - 1.0 / 24.0, rel=1e-15)
        assert abs(payload["b1"]) < 4e-7
        assert payload["a1"] == pytest.approx(0.3260, abs=5e-4)
        assert payload["seed"] == 1729
        assert payload["deviations"]["a0_numeric_vs_exact"] < 1e-8

    def test_csv_single_row(self, capsys):
        code, out, _ = run_cli(["constants"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 1
        assert "deviation_b1_magnitude" in rows[0]


class TestRegularize:
    def test_table_and_fits(self, capsys):
        code, out, _ = run_cli(["regularize", "--s-values",
                                "0.4,0.2,0.1,0.05,0.025", "--format", "json"],
                               capsys)
        assert code == 0
        payload = json.loads(out)
        assert [row["s"] for row in payload["rows"]] == [0.4, 0.2, 0.1, 0.05, 0.025]
        assert payload["difference_extrapolated"] == pytest.approx(
            math.log(2.0) ** 2 / math.pi ** 2 - 1.0 / 24.0, abs=1e-5)
        assert payload["j1_fit"]["c_m2"] == pytest.approx(
            1.0 / (2.0 * math.pi ** 2), abs=1e-4)

    def test_exact_column_at_unit_order(self, capsys):
        _, out, _ = run_cli(["regularize", "--s-values", "1,0.4,0.2,0.1"],
                            capsys)
        rows = parse_csv(out)
        assert float(rows[0]["j1_exact"]) == pytest.approx(0.5, abs=1e-12)

    def test_nonpositive_s_exits_2(self, capsys):
        code, _, err = run_cli(["regularize", "--s-values", "0.4,0.2,-0.1,0.05"],
                               capsys)
        assert code == 2
        assert "positive" in err


class TestRatio:
    def test_rows(self, capsys):
        code, out, _ = run_cli(["ratio", "--u-values", "0.1,0.04,0.01"],
                               capsys)
        assert code == 0
        rows = parse_csv(out)
        leading = math.pi * math.exp(-0.5772156649015329)
        for row in rows:
            assert float(row["leading"]) == pytest.approx(leading, rel=1e-11)
            assert float(row["ratio_two_term"]) == pytest.approx(
                float(row["ratio_from_asymptotics"]),
                abs=1e-3 * float(row["u"]))

    def test_two_term_spot(self, capsys):
        _, out, _ = run_cli(["ratio", "--u-values", "0.04"], capsys)
        assert float(parse_csv(out)[0]["ratio_two_term"]) == pytest.approx(
            1.77303, abs=2e-5)


class TestOutputContract:
    def test_determinism(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code, _, _ = run_cli(["constants", "--format", "json",
                                  "--output", str(path)], capsys)
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_determinism_and_line_endings(self, tmp_path, capsys):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            run_cli(["sweep", "--u-min", "0.5", "--u-max", "1", "--points",
                     "2", "--output", str(path)], capsys)
        blob = paths[0].read_bytes()
        assert blob == paths[1].read_bytes()
        assert b"\r" not in blob
        assert blob.endswith(b"\n")

    def test_twelve_significant_digits(self, capsys):
        _, out, _ = run_cli(["solve", "--u", "1"], capsys)
        delta_cell = parse_csv(out)[0]["delta"]
        assert delta_cell == format(float(delta_cell), ".12g")
        assert len(delta_cell.lstrip("0.")) >= 11

    def test_nonconvergence_exits_3(self, capsys):
        # one Gauss-Kronrod panel cannot meet a 1e-14 tolerance here
        code, _, err = run_cli(["constants", "--max-depth", "1",
                                "--rel-tol", "1e-14", "--abs-tol", "1e-16"],
                               capsys)
        assert code == 3
        assert "did not converge" in err
