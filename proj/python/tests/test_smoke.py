import json
import math

import pytest

import leodesign as ld

TINY = {"optim.population": 4, "optim.iterations": 2, "coverage.time_step_s": 3600.0}


def test_config_round_trip():
    cfg = ld.default_config("desk")
    assert cfg["coverage.grid_step_deg"] == 30.0
    assert ld.normalize_config(cfg, "desk") == cfg
    with pytest.raises(ld.ParameterError):
        ld.normalize_config({"link.mystery": 1})


def test_cost_of_the_48_satellite_design():
    c = ld.cost(8, 6, 1589.0)
    assert c["per_satellite_total"] == pytest.approx(1.3808991587487585, rel=1e-12)
    assert c["constellation_total"] == pytest.approx(66.2831596199404, rel=1e-12)


def test_geometry_helpers():
    els = ld.walker_elements(8, 6, 1, 1589.0, 41.0)
    assert len(els) == 48
    assert els[1]["raan_deg"] == pytest.approx(0.0)
    assert els[8]["raan_deg"] == pytest.approx(60.0)
    assert els[8]["arg_latitude_deg"] == pytest.approx(7.5)
    assert ld.min_elevation_for_coverage_angle(45.0, 1589.0) == pytest.approx(61.44369208027692, rel=1e-12)
    fp = ld.footprint(600.0, 10.0)
    assert fp["angular_radius_deg"] == pytest.approx(15.824678168784645, rel=1e-12)


def test_link_budget_values():
    lb = ld.link_budget(600.0, 10.0, profile="desk")
    assert lb["slant_range_m"] == pytest.approx(1932256.864656053, rel=1e-12)
    assert lb["psi_m2"] == pytest.approx(280100912140.63586, rel=1e-11)
    assert lb["required_count"] * lb["mean_rate_bps"] == pytest.approx(80e6, rel=1e-12)
    with pytest.raises(ld.InfeasibleError):
        ld.link_budget(600.0, 90.0)


def test_evaluate_report():
    rep = ld.evaluate(1589.0, 6, 8, 41.0, profile="desk")
    assert rep["cost"]["constellation_total"] == pytest.approx(66.2831596199404, rel=1e-12)
    assert len(rep["coverage"]["eta_per_slot"]) == 144
    assert 0.0 <= rep["coverage"]["eta_min"] <= 1.0
    with pytest.raises(ld.ParameterError):
        ld.evaluate(1589.0, 0, 8, 41.0)


def test_coverage_matches_report():
    rep = ld.evaluate(1589.0, 6, 8, 41.0, profile="desk")
    theta = ld.min_elevation_for_coverage_angle(45.0, 1589.0)
    cov = ld.coverage(1589.0, 6, 8, 41.0, theta, profile="desk")
    assert cov["eta_per_slot"] == rep["coverage"]["eta_per_slot"]


def test_optimize_is_deterministic():
    a = ld.optimize("improved", 3, TINY, "desk")
    b = ld.optimize("improved", 3, TINY, "desk")
    assert a == b
    assert len(a["trace"]) == 2
    assert a["evaluations"] == 4 * 5
    assert set(ld.algorithms()) == {"improved", "classical-ga", "pso", "sca", "gwo", "tabu"}


def test_run_experiment_and_compare(tmp_path):
    d = ld.run_experiment("tabu", tmp_path / "run", TINY, "desk")
    result = json.loads((tmp_path / "run" / "result.json").read_text())
    assert result["algorithm"] == "tabu"
    assert d.endswith("run")
    rows = ld.compare(["improved", "classical-ga"], [1, 2], tmp_path / "cmp", TINY, "desk")
    assert [r["algorithm"] for r in rows] == ["improved", "classical-ga"]
    assert all(r["runs"] == 2 and math.isfinite(r["mean_final_cost"]) for r in rows)
    assert (tmp_path / "cmp" / "comparison.csv").exists()
