import json

import pytest

from beccool.config import resolve_config
from beccool.constants import CONST
from beccool.cooling import rescale_oscillator, steady_phonon_full
from beccool.errors import ConfigError
from beccool.formats import canonical_json
from beccool.runs import (
    COMMANDS,
    DEFAULT_FORMATS,
    run_levels,
    run_master_eq,
    run_steady,
    run_sweep_detuning,
    run_sweep_qf,
    run_sweep_temperature,
    run_validate,
)

TWO_PI = 2 * 3.141592653589793


def csv_lines(body):
    assert body.endswith("\n") and "\r" not in body
    return body[:-1].split("\n")


class TestRegistry:
    def test_commands_and_defaults_align(self):
        assert set(COMMANDS) == set(DEFAULT_FORMATS)
        assert DEFAULT_FORMATS["levels"] == "csv"
        assert DEFAULT_FORMATS["steady"] == "json"
        assert DEFAULT_FORMATS["validate"] == "text"

    def test_format_restrictions(self, baseline):
        with pytest.raises(ConfigError):
            run_steady(baseline, fmt="text")
        with pytest.raises(ConfigError):
            run_levels(baseline, fmt="text")
        with pytest.raises(ConfigError):
            run_validate(baseline, fmt="yaml")


class TestLevels:
    def test_csv_layout(self, baseline):
        out = run_levels(baseline)
        assert out.media_type.startswith("text/csv")
        lines = csv_lines(out.body)
        prefix = "# resolved-config: "
        assert lines[0].startswith(prefix)
        assert json.loads(lines[0][len(prefix):]) == json.loads(
            canonical_json(baseline.echo)
        )
        header = lines[1].split(",")
        assert header == [
            "B_tesla",
            "E_over_h_F1_mF-1_hz",
            "E_over_h_F1_mF0_hz",
            "E_over_h_F1_mF1_hz",
            "E_over_h_F2_mF-2_hz",
            "E_over_h_F2_mF-1_hz",
            "E_over_h_F2_mF0_hz",
            "E_over_h_F2_mF1_hz",
            "E_over_h_F2_mF2_hz",
            "omega_L_linear_hz",
            "omega_L_exact_hz",
        ]
        assert lines[-1] == "# version: 0.1.0"
        data = lines[2:-1]
        assert len(data) == 61

    def test_zero_field_row(self, baseline):
        lines = csv_lines(run_levels(baseline).body)
        first = lines[2].split(",")
        assert first[0] == "0"
        assert first[1:4] == ["-3417500000"] * 3
        assert first[4:9] == ["3417500000"] * 5
        assert first[9] == "0"
        assert first[10] == "0"

    def test_json_format(self, baseline):
        payload = json.loads(run_levels(baseline, fmt="json").body)
        assert payload["version"] == "0.1.0"
        assert len(payload["rows"]) == 61
        assert payload["rows"][-1][0] == 0.3
        assert payload["config"]["levels_B_points"] == 61

    def test_custom_grid(self):
        r = resolve_config({"levels_B_min_T": 0.0, "levels_B_max_T": 0.1, "levels_B_points": 5})
        payload = json.loads(run_levels(r, fmt="json").body)
        assert [row[0] for row in payload["rows"]] == [0.0, 0.025, 0.05, 0.075, 0.1]

    def test_bad_grid(self):
        with pytest.raises(ConfigError):
            run_levels(resolve_config({"levels_B_points": 1}))
        with pytest.raises(ConfigError):
            run_levels(resolve_config({"levels_B_min_T": 0.4}))


class TestSteady:
    def test_json_payload(self, baseline):
        payload = json.loads(run_steady(baseline).body)
        res = payload["result"]
        assert res["n_steady"] == pytest.approx(1.3210848867679568, rel=1e-11)
        assert res["n_th"] == pytest.approx(1041.3310361537622, rel=1e-11)
        assert res["kappa_per_s"] == pytest.approx(62.8318530718, rel=1e-11)
        chain = payload["chain"]
        assert chain["thermal_amplitude_m"] == pytest.approx(1.86963810327e-11, rel=1e-11)
        assert chain["g0_rad_s"] == pytest.approx(8.0, rel=1e-11)
        resonance = payload["resonance"]
        assert resonance["omega_L_hz"] == pytest.approx(1e6 - 960.0, rel=1e-9)
        assert resonance["static_B_T"] == resonance["implied_B_T"]
        assert payload["validity"]["all_pass"] is True
        assert payload["version"] == "0.1.0"

    def test_csv_key_value_view(self, baseline):
        lines = csv_lines(run_steady(baseline, fmt="csv").body)
        assert lines[1] == "key,value"
        cells = dict(line.split(",", 1) for line in lines[2:])
        assert cells["result.n_steady"] == "1.32108488677"
        assert cells["validity.all_pass"] == "true"
        assert "config" not in ",".join(cells)


class TestSweepDetuning:
    def test_csv_shape_and_minimum(self, baseline):
        lines = csv_lines(run_sweep_detuning(baseline).body)
        assert lines[1] == "x,n_steady"
        data = lines[2:-2]
        assert len(data) == 99
        assert lines[-2].startswith("# minimum: x=0.33,")
        assert lines[-1] == "# version: 0.1.0"

    def test_json_minimum_extra(self, baseline):
        payload = json.loads(run_sweep_detuning(baseline, fmt="json").body)
        assert payload["minimum"]["x"] == 0.33
        assert payload["minimum"]["n_steady"] == pytest.approx(
            1.32113453233, rel=1e-11
        )
        xs = [row[0] for row in payload["rows"]]
        assert xs[0] == 0.01 and xs[-1] == 0.99

    def test_bounds_enforced(self):
        with pytest.raises(ConfigError):
            run_sweep_detuning(resolve_config({"sweep_x_min": 0.0}))
        with pytest.raises(ConfigError):
            run_sweep_detuning(resolve_config({"sweep_x_max": 1.0}))
        with pytest.raises(ConfigError):
            run_sweep_detuning(resolve_config({"sweep_x_min": 0.9, "sweep_x_max": 0.5}))


class TestSweepTemperature:
    def test_zero_kelvin_row_is_finite(self, baseline):
        payload = json.loads(run_sweep_temperature(baseline, fmt="json").body)
        first = payload["rows"][0]
        assert first == [0.0, 0.0, 0.0]
        assert len(payload["rows"]) == 85

    def test_threshold_extra(self, baseline):
        payload = json.loads(run_sweep_temperature(baseline, fmt="json").body)
        assert payload["ground_state_threshold_K"] == pytest.approx(
            0.0378536224365, rel=1e-9
        )
        body = run_sweep_temperature(baseline).body
        assert "# ground-state-threshold-K: 0.0378536224365" in body

    def test_monotone_rows(self, baseline):
        payload = json.loads(run_sweep_temperature(baseline, fmt="json").body)
        ns = [row[2] for row in payload["rows"]]
        assert all(a <= b for a, b in zip(ns, ns[1:]))


class TestSweepQf:
    def test_grid_order_and_shape(self, baseline):
        payload = json.loads(run_sweep_qf(baseline, fmt="json").body)
        rows = payload["rows"]
        assert len(rows) == 81
        assert rows[0][0] == pytest.approx(1e3, rel=1e-9)
        # Q outer, f inner: the first nine rows share Q and ascend in f
        first_block = rows[:9]
        assert all(r[0] == rows[0][0] for r in first_block)
        fs = [r[1] for r in first_block]
        assert fs == sorted(fs)
        assert rows[9][0] > rows[0][0]

    def test_contour_is_exact(self, baseline):
        payload = json.loads(run_sweep_qf(baseline, fmt="json").body)
        contour = payload["contour"]
        assert contour
        for point in contour:
            scaled = rescale_oscillator(
                baseline.params, TWO_PI * point["f_m_hz"], point["quality_Q"]
            )
            assert steady_phonon_full(scaled).n_steady == pytest.approx(1.0, rel=1e-9)

    def test_cryostat_reference_point(self):
        r = resolve_config(
            {"temperature_K": 4.2, "sweep_Q_points": 3, "sweep_f_points": 3}
        )
        payload = json.loads(run_sweep_qf(r, fmt="json").body)
        by_point = {(row[0], row[1]): row[2] for row in payload["rows"]}
        assert by_point[(100000.0, 1000.0)] == pytest.approx(
            0.111165434557, rel=1e-11
        )
        assert by_point[(1000.0, 1000.0)] == pytest.approx(
            11.1165420577, rel=1e-11
        )

    def test_log_grid_validation(self):
        with pytest.raises(ConfigError):
            run_sweep_qf(resolve_config({"sweep_Q_min": 0.0}))


class TestMasterEq:
    def test_default_large_angle_breakdown(self, baseline):
        payload = json.loads(run_master_eq(baseline).body)
        oracle = payload["oracle"]
        assert oracle["n_max"] == 10464
        assert oracle["tail_mass"] < 1e-6
        assert oracle["pump"] == "sin2"
        assert payload["closed_form"]["n_steady"] == pytest.approx(
            1.32108488677, rel=1e-11
        )
        # collective g drives the pump far outside the small-angle regime, so
        # the oracle mean sits orders of magnitude above the closed form
        assert payload["ratio_oracle_to_closed_form"] == pytest.approx(
            787.695849822, rel=1e-9
        )

    def test_single_atom_mode_agrees_with_closed_form(self):
        r = resolve_config({"oracle_g": "g0"})
        payload = json.loads(run_master_eq(r).body)
        assert payload["ratio_oracle_to_closed_form"] == pytest.approx(
            0.999509136915, rel=1e-9
        )
        assert abs(payload["ratio_oracle_to_closed_form"] - 1.0) < 0.01
        assert payload["residual"]["ratio"] == pytest.approx(1.34956130931, rel=1e-9)

    def test_forced_eighth_matches_exactly(self):
        r = resolve_config({"oracle_pump": "linear_eighth"})
        payload = json.loads(run_master_eq(r).body)
        assert payload["ratio_oracle_to_closed_form"] == 1.0

    def test_forced_quarter_is_half(self):
        r = resolve_config({"oracle_pump": "linear_quarter"})
        payload = json.loads(run_master_eq(r).body)
        assert payload["ratio_oracle_to_closed_form"] == pytest.approx(
            0.500317363876, rel=1e-9
        )


class TestValidate:
    def test_text_report_passes(self, baseline):
        out = run_validate(baseline)
        assert out.all_pass is True
        assert out.media_type.startswith("text/plain")
        lines = out.body[:-1].split("\n")
        assert lines[0] == "validity report"
        assert lines[-1] == "all checks passed"
        names = [line.split(":")[0] for line in lines[1:-1]]
        assert names == [
            "g0_tau_half",
            "beta_over_d0",
            "field_over_crossover",
            "qf_product_hz",
        ]
        assert all("-> pass" in line for line in lines[1:-1])

    def test_text_report_failure(self):
        r = resolve_config({"static_B_T": 0.13})
        out = run_validate(r)
        assert out.all_pass is False
        assert "1 check(s) failed" in out.body
        fail_lines = [l for l in out.body.splitlines() if "-> fail" in l]
        assert len(fail_lines) == 1
        assert fail_lines[0].startswith("field_over_crossover")

    def test_json_report(self, baseline):
        out = run_validate(baseline, fmt="json")
        payload = json.loads(out.body)
        assert payload["all_pass"] is True
        assert len(payload["checks"]) == 4
        qf = payload["checks"][-1]
        assert qf["name"] == "qf_product_hz"
        assert qf["comparison"] == ">"
        assert qf["value"] == pytest.approx(1e11, rel=1e-11)


class TestDeterminismAcrossThreads:
    def test_sweep_qf_thread_count_invariant(self, baseline):
        one = run_sweep_qf(baseline, threads=1).body
        many = run_sweep_qf(baseline, threads=8).body
        assert one == many

    def test_levels_thread_count_invariant(self, baseline):
        assert run_levels(baseline, threads=1).body == run_levels(baseline, threads=3).body

    def test_sweep_temperature_thread_count_invariant(self, baseline):
        one = run_sweep_temperature(baseline, threads=1).body
        four = run_sweep_temperature(baseline, threads=4).body
        assert one == four
