import math

import pytest

import leoshare as ls


def test_presets_load():
    assert set(ls.preset_names()) == {"vsat", "handheld"}
    f = ls.load_preset("handheld")
    assert f.name == "handheld"
    assert len(f.sharings) == 4


def test_thresholds():
    f = ls.load_preset("vsat")
    ul = ls.density_ratio_threshold(f.scenario(ls.Sharing.UL_DL, 1.0), ls.LinkFamily.UPLINK)
    assert 230 <= ul <= 240
    dl = ls.density_ratio_threshold(f.scenario(ls.Sharing.DL_DL, 1.0), ls.LinkFamily.DOWNLINK)
    assert dl > 0


def test_analytic_quantities_are_consistent():
    cfg = ls.load_preset("handheld").scenario(ls.Sharing.UL_UL, 100.0)
    se = ls.ergodic_se(cfg)
    assert 0 < se < 10
    assert ls.se_lower_bound(cfg) <= se
    assert ls.coverage_probability(cfg, 0.0) == pytest.approx(ls.nonempty_probability(cfg))
    assert ls.laplace_interference(cfg, 6e5, 0.0) == 1.0
    sat, terr = ls.mean_interference(cfg)
    assert sat > 0 and terr > 0


def test_monte_carlo_matches_analytic():
    cfg = ls.load_preset("handheld").scenario(ls.Sharing.UL_UL, 100.0)
    mc = ls.estimate(cfg, trials=4000, seed=3, gamma_grid=[1.0])
    se = mc["ergodic_se"]
    assert se["trials"] == 4000
    assert abs(se["value"] - ls.ergodic_se(cfg)) <= max(4 * se["std_error"], 0.05 * se["value"])
    assert len(mc["coverage"]) == 1
    assert mc == ls.estimate(cfg, trials=4000, seed=3, threads=2, gamma_grid=[1.0])


def test_shadowed_rician():
    p = ls.ShadowedRicianParams(3, 0.063, 8.97e-4)
    assert p.normalization() == pytest.approx(1.0, abs=1e-10)
    assert p.power_ccdf(0.0) == 1.0
    assert p.mean_power() == pytest.approx(2 * 0.063 + 8.97e-4)
    with pytest.raises(ValueError):
        ls.ShadowedRicianParams(0, 0.063, 8.97e-4)


def test_config_errors():
    with pytest.raises(ls.ConfigError, match="line"):
        ls.parse_scenario("[satellite]\nterminal = phone\n")


def test_sweep_csv():
    f = ls.load_preset("vsat")
    f.sharings = [ls.Sharing.UL_DL]
    text = ls.sweep_csv(f, grid="1:2:2")
    lines = text.strip().splitlines()
    assert lines[0].startswith("config,ratio,analytic_se")
    assert len(lines) == 3
    assert all(not math.isnan(float(l.split(",")[2])) for l in lines[1:])
