"""Smoke tests for the fdnet Python bindings."""

import math

import pytest

import fdnet


CFG_TEXT = """
[experiment]
kind = mimo_selection
trials = 25
base_seed = 9
sweep_param = antennas
sweep_values = 2 3
"""


def records_equal(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if (ra.sweep_param, ra.sweep_value, ra.metric, ra.mean,
                ra.std_error, ra.trials) != (rb.sweep_param, rb.sweep_value,
                                             rb.metric, rb.mean, rb.std_error,
                                             rb.trials):
            return False
    return True


def test_import_surface():
    assert fdnet.__version__
    for name in ("rate", "ser", "waterfill", "price_matching",
                 "centralized_exhaustive", "run_experiment", "parse_config",
                 "emit_csv", "RngStream", "ExperimentKind"):
        assert hasattr(fdnet, name), name


def test_channel_values():
    assert fdnet.rate(1.0) == 1.0
    assert fdnet.rate(3.0) == 2.0
    assert abs(fdnet.ser(1.0, fdnet.Modulation.BPSK) - 0.0786496) < 1e-4


def test_waterfill_hand_case():
    ch = fdnet.ParallelChannels()
    ch.eff_gain = [2.0, 1.0, 0.25]
    ch.p_total = 1.0
    alloc = fdnet.waterfill(ch)
    assert alloc.power == pytest.approx([0.75, 0.25, 0.0], abs=1e-12)
    assert alloc.water_level == pytest.approx(1.25, abs=1e-12)
    assert not alloc.degenerate


def test_run_experiment_deterministic_across_threads():
    cfg = fdnet.parse_config(CFG_TEXT)
    first = fdnet.run_experiment(cfg, 1)
    second = fdnet.run_experiment(cfg, 1)
    third = fdnet.run_experiment(cfg, 3)
    assert records_equal(first, second)
    assert records_equal(first, third)
    assert {r.metric for r in first} == {
        "sum_rate_selected", "sum_rate_fixed",
        "sum_ser_selected", "sum_ser_fixed",
    }
    assert all(r.trials == 25 for r in first)


def test_emit_csv_shape():
    cfg = fdnet.parse_config(CFG_TEXT)
    csv = fdnet.emit_csv(fdnet.run_experiment(cfg))
    lines = csv.splitlines()
    assert lines[0] == "sweep_param,sweep_value,metric,mean,stderr,trials"
    assert len(lines) == 1 + 2 * 4  # two sweep values, four metrics


def test_config_round_trip():
    cfg = fdnet.parse_config(CFG_TEXT)
    text = fdnet.serialize_config(cfg)
    again = fdnet.serialize_config(fdnet.parse_config(text))
    assert text == again


def test_config_error():
    with pytest.raises(fdnet.ConfigError):
        fdnet.parse_config("[experiment]\ntrials = 0\n")


def test_matching_matches_centralized_for_two_users():
    cfg = fdnet.ExperimentConfig()
    rng = fdnet.RngStream(77, 0)
    scn = fdnet.generate_ofdma_scenario(cfg, 2, 3, 1.0, rng)
    matched = fdnet.price_matching(scn, fdnet.SplitRule.UNIFORM, 1e-3)
    assert fdnet.is_feasible(matched.assignment, scn.m, scn.k)
    got = fdnet.sum_rate(
        scn, matched.assignment,
        fdnet.split_bs_power(scn, matched.assignment, fdnet.SplitRule.UNIFORM))
    best = fdnet.centralized_exhaustive(scn, fdnet.SplitRule.UNIFORM)
    assert best.candidates_evaluated == 12
    assert got == pytest.approx(best.sum_rate, abs=1e-9)
    assert got <= best.sum_rate + 1e-12


def test_selection_beats_fixed_choice():
    cfg = fdnet.ExperimentConfig()
    rng = fdnet.RngStream(5, 1)
    scn = fdnet.generate_mimo_scenario(cfg, 3, rng)
    best = fdnet.select_max_sum_rate(scn)
    fixed = fdnet.LinkSelection(1, 2, 1, 2)
    fixed_rate = sum(
        fdnet.rate(s) for s in fdnet.bidirectional_sinrs(scn, fixed))
    assert best.objective >= fixed_rate - 1e-15
    assert math.isfinite(best.objective)


def test_relay_power_hand_instance():
    cfg = fdnet.ExperimentConfig()
    cfg.relays = 1
    cfg.configs_per_relay = 1
    rng = fdnet.RngStream(3, 2)
    scn = fdnet.generate_relay_scenario(cfg, 1, rng)
    res = fdnet.optimal_relay_power(scn, 0, 0,
                                    fdnet.RelayProtocol.DECODE_FORWARD)
    assert 0.0 <= res.p_r <= scn.p_r_max
    assert res.sinr >= 0.0
