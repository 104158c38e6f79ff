import json
from pathlib import Path

import numpy as np
import pytest

from qzsgame import cli
from qzsgame.config import parse_config, load_config
from qzsgame.errors import ConfigParseError, ConfigValidationError, InfeasibleParameterError
from qzsgame.presets import PRESETS, ExpectedOutcome, ScenarioPreset
from qzsgame.reporting import format_number, read_surface_csv

REPO_ROOT = Path(__file__).resolve().parent.parent

MINIMAL = json.dumps(
    {"payoff_matrix": [[2, 3, -2], [-2, 4, 2]], "schmidt_coefficients": [1, 0]}
)


def _kv_to_dict(path):
    out = {}
    for line in Path(path).read_text().splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


class TestParseConfig:
    def test_minimal_document_gets_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.game.rows == 2 and cfg.game.cols == 3
        assert cfg.state.is_product
        assert cfg.resolution == 201
        assert cfg.output_format == "kv"
        assert cfg.phase_sign == 1
        assert cfg.tolerances.gradient == 1e-8

    def test_skewed_state_is_valid(self):
        cfg = parse_config(
            '{"payoff_matrix": [[2,3,-2],[-2,4,2]], "schmidt_coefficients": [0.6, 0.8]}'
        )
        assert not cfg.state.is_product

    def test_unnormalized_state_rejected(self):
        with pytest.raises(ConfigValidationError, match="schmidt_coefficients"):
            parse_config(
                '{"payoff_matrix": [[2,3,-2],[-2,4,2]], "schmidt_coefficients": [1, 1]}'
            )

    def test_negative_coefficient_rejected(self):
        with pytest.raises(ConfigValidationError, match="schmidt_coefficients"):
            parse_config(
                '{"payoff_matrix": [[2,3,-2],[-2,4,2]], "schmidt_coefficients": [0.8, -0.6]}'
            )

    def test_malformed_json_reports_position(self):
        with pytest.raises(ConfigParseError, match=r"line \d+, column \d+"):
            parse_config('{"payoff_matrix": [[1, 2],\n [3, 4]')

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigValidationError, match="unknown key 'grid'"):
            parse_config(
                '{"payoff_matrix": [[1,2],[3,4]], "schmidt_coefficients": [1,0], "grid": 5}'
            )

    def test_ragged_matrix_rejected(self):
        with pytest.raises(ConfigValidationError, match="rectangular"):
            parse_config(
                '{"payoff_matrix": [[1,2,3],[4,5]], "schmidt_coefficients": [1,0]}'
            )

    def test_coefficient_count_must_match_shape(self):
        with pytest.raises(ConfigValidationError, match=r"min\(rows, cols\)"):
            parse_config(
                '{"payoff_matrix": [[1,2,3],[4,5,6]], "schmidt_coefficients": [1,0,0]}'
            )

    @pytest.mark.parametrize(
        "snippet,field",
        [
            ('"resolution": 1', "resolution"),
            ('"resolution": true', "resolution"),
            ('"output_format": "xml"', "output_format"),
            ('"phase_sign": 0', "phase_sign"),
            ('"tolerances": {"gradient": -1}', "tolerances.gradient"),
            ('"tolerances": {"spam": 1}', "tolerances"),
        ],
    )
    def test_option_validation(self, snippet, field):
        doc = (
            '{"payoff_matrix": [[1,2],[3,4]], "schmidt_coefficients": [1,0], '
            + snippet
            + "}"
        )
        with pytest.raises(ConfigValidationError, match=field.split(".")[0]):
            parse_config(doc)

    def test_shipped_examples_parse(self):
        examples = sorted((REPO_ROOT / "configs").glob("*.json"))
        assert len(examples) == 3
        for path in examples:
            load_config(path)


def test_preset_catalog_covers_required_scenarios():
    seen = {
        (
            p.config.game.rows,
            p.config.game.cols,
            tuple(np.round(p.config.state.coeffs, 6)),
        )
        for p in PRESETS.values()
    }
    h = round(1 / np.sqrt(2), 6)
    t = round(1 / np.sqrt(3), 6)
    assert seen == {
        (2, 3, (1.0, 0.0)),
        (2, 3, (0.0, 1.0)),
        (2, 3, (h, h)),
        (3, 3, (1.0, 0.0, 0.0)),
        (3, 3, (t, t, t)),
        (3, 3, (h, h, 0.0)),
    }


class TestCliSurface:
    def test_writes_csv_script_and_figure(self, tmp_path):
        rc = cli.main(
            ["surface", "--preset", "fig1", "--resolution", "41", "--out", str(tmp_path)]
        )
        assert rc == 0
        csv_path = tmp_path / "fig1_surface.csv"
        assert csv_path.exists()
        assert (tmp_path / "fig1_surface_plot.py").exists()
        assert (tmp_path / "fig1_surface.png").exists()
        surface, meta = read_surface_csv(csv_path)
        assert surface.values.shape == (41, 41)
        assert meta["game_shape"] == "2x3"
        assert "p_domain" in meta and "domain_note" in meta

    def test_round_trip_is_bit_exact_at_12_digits(self, tmp_path):
        rc = cli.main(
            [
                "surface",
                "--preset",
                "fig3",
                "--resolution",
                "31",
                "--out",
                str(tmp_path),
                "--no-figure",
            ]
        )
        assert rc == 0
        surface, _ = read_surface_csv(tmp_path / "fig3_surface.csv")
        from qzsgame.equilibrium import sample_surface
        from qzsgame.presets import get_preset

        cfg = get_preset("fig3").config
        original = sample_surface(cfg.game, cfg.state, resolution=31)
        for arr, ref in [
            (surface.p_values, original.p_values),
            (surface.q_values, original.q_values),
            (surface.values.ravel(), original.values.ravel()),
        ]:
            expected = np.array([float(format_number(v)) for v in np.asarray(ref).ravel()])
            assert np.array_equal(np.asarray(arr).ravel(), expected)

    def test_default_grid_hits_known_saddle_value(self, tmp_path):
        rc = cli.main(["surface", "--preset", "fig1", "--out", str(tmp_path), "--no-figure"])
        assert rc == 0
        surface, _ = read_surface_csv(tmp_path / "fig1_surface.csv")
        assert surface.values.shape == (201, 201)
        i = int(np.argmin(np.abs(surface.p_values - 10 / 13)))
        j = int(np.argmin(np.abs(surface.q_values - 5 / 13)))
        assert abs(surface.values[i, j] - 14 / 13) <= 1e-3

    def test_no_figure_skips_png(self, tmp_path):
        rc = cli.main(
            [
                "surface",
                "--preset",
                "fig2",
                "--resolution",
                "21",
                "--out",
                str(tmp_path),
                "--no-figure",
            ]
        )
        assert rc == 0
        assert not (tmp_path / "fig2_surface.png").exists()

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            cli.main(
                [
                    "surface",
                    "--preset",
                    "fig1-entangled",
                    "--resolution",
                    "21",
                    "--out",
                    str(out),
                    "--no-figure",
                ]
            )
        f1 = (a / "fig1-entangled_surface.csv").read_bytes()
        f2 = (b / "fig1-entangled_surface.csv").read_bytes()
        assert f1 == f2

    def test_emitted_plot_script_runs(self, tmp_path):
        import subprocess
        import sys

        cli.main(
            [
                "surface",
                "--preset",
                "fig1",
                "--resolution",
                "11",
                "--out",
                str(tmp_path),
                "--no-figure",
            ]
        )
        proc = subprocess.run(
            [sys.executable, "fig1_surface_plot.py"],
            cwd=tmp_path,
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert (tmp_path / "fig1_surface.png").exists()


class TestCliEquilibrium:
    def test_report_fields(self, tmp_path, capsys):
        rc = cli.main(
            ["equilibrium", "--preset", "fig1", "--out", str(tmp_path), "--no-figure"]
        )
        assert rc == 0
        report = _kv_to_dict(tmp_path / "fig1_equilibrium.kv")
        assert report["status"] == "interior-saddle"
        assert float(report["point_p"]) == pytest.approx(10 / 13, abs=1e-6)
        assert float(report["point_q"]) == pytest.approx(5 / 13, abs=1e-6)
        assert float(report["value"]) == pytest.approx(14 / 13, abs=1e-9)
        assert float(report["classical_value"]) == pytest.approx(0.0, abs=1e-9)
        assert report["comparison"] == "differs"
        out = capsys.readouterr().out
        assert "interior-saddle" in out

    def test_equal_flag_for_swapped_product_state(self, tmp_path):
        rc = cli.main(
            [
                "equilibrium",
                "--preset",
                "fig1-alt",
                "--resolution",
                "501",
                "--out",
                str(tmp_path),
                "--no-figure",
            ]
        )
        assert rc == 0
        report = _kv_to_dict(tmp_path / "fig1-alt_equilibrium.kv")
        assert report["status"] == "boundary-equilibrium"
        assert float(report["value"]) == pytest.approx(0.0, abs=1e-9)
        assert report["comparison"] == "equal"

    def test_none_status_for_partial_entangled(self, tmp_path):
        rc = cli.main(
            [
                "equilibrium",
                "--preset",
                "fig3-partial",
                "--resolution",
                "301",
                "--out",
                str(tmp_path),
                "--no-figure",
            ]
        )
        assert rc == 0
        report = _kv_to_dict(tmp_path / "fig3-partial_equilibrium.kv")
        assert report["status"] == "none"
        assert report["value"] == "none"
        assert report["comparison"] == "no-equilibrium"

    def test_csv_format(self, tmp_path):
        rc = cli.main(
            [
                "equilibrium",
                "--preset",
                "fig2",
                "--out",
                str(tmp_path),
                "--format",
                "csv",
                "--no-figure",
            ]
        )
        assert rc == 0
        text = (tmp_path / "fig2_equilibrium.csv").read_text()
        assert text.startswith("key,value\n")
        assert "status,interior-saddle" in text


class TestCliClassical:
    def test_report(self, tmp_path):
        rc = cli.main(
            [
                "classical",
                "--preset",
                "fig2",
                "--out",
                str(tmp_path),
                "--fictitious",
                "20000",
            ]
        )
        assert rc == 0
        report = _kv_to_dict(tmp_path / "fig2_classical.kv")
        assert float(report["value"]) == pytest.approx(4 / 3, abs=1e-9)
        assert float(report["minimax_violation"]) <= 1e-6
        lo = float(report["fictitious_lower"])
        hi = float(report["fictitious_upper"])
        assert lo - 1e-9 <= 4 / 3 <= hi + 1e-9

    def test_config_file_input(self, tmp_path):
        cfg = tmp_path / "game.json"
        cfg.write_text(MINIMAL)
        rc = cli.main(["classical", "--config", str(cfg), "--out", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "game_classical.kv").exists()


class TestCliVerify:
    def test_all_checks_pass(self, capsys):
        assert cli.main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") >= 8


class TestExitCodes:
    def test_parse_error_is_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["surface", "--config", str(bad)]) == 2

    def test_validation_error_is_3(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(
            '{"payoff_matrix": [[1,2],[3,4]], "schmidt_coefficients": [1,1]}'
        )
        assert cli.main(["equilibrium", "--config", str(bad)]) == 3

    def test_infeasible_error_is_4(self, tmp_path, monkeypatch):
        def boom(*args, **kwargs):
            raise InfeasibleParameterError("p=0.0 outside [1/9, 1]", p_min=1 / 9)

        monkeypatch.setattr(cli, "sample_surface", boom)
        rc = cli.main(
            ["surface", "--preset", "fig3", "--out", str(tmp_path), "--no-figure"]
        )
        assert rc == 4

    def test_reproduce_failure_is_5(self, monkeypatch, capsys):
        good = PRESETS["fig1"]
        broken = ScenarioPreset(
            name="broken",
            description=good.description,
            config=good.config,
            expected=ExpectedOutcome(
                status="interior-saddle",
                point=good.expected.point,
                value=99.0,
                classical_value=good.expected.classical_value,
                comparison="differs",
            ),
        )
        monkeypatch.setattr(cli, "PRESETS", {"broken": broken})
        assert cli.main(["reproduce"]) == 5
        assert "FAIL broken" in capsys.readouterr().out

    def test_io_error_is_6(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        out = blocker / "sub" / "surface.csv"
        rc = cli.main(
            ["surface", "--preset", "fig1", "--resolution", "5", "--out", str(out)]
        )
        assert rc == 6


def test_reproduce_artifacts(tmp_path, monkeypatch):
    # Restrict to one fast preset; artifact layout is what is under test.
    monkeypatch.setattr(cli, "PRESETS", {"fig1": PRESETS["fig1"]})
    rc = cli.main(["reproduce", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "fig1_equilibrium.kv").exists()
    assert (tmp_path / "fig1_surface.csv").exists()
    assert (tmp_path / "fig1_surface_plot.py").exists()
    assert (tmp_path / "fig1_surface.png").exists()
    report = _kv_to_dict(tmp_path / "fig1_equilibrium.kv")
    assert report["comparison"] == "differs"
