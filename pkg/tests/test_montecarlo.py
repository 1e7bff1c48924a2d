import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.stats import norm

from morphdet.montecarlo import Scenario, run_ber_point, run_symbol, simulate_block, sweep, wilson_interval
from morphdet.noise import NoiseParams, sample_labeled
from morphdet.streams import block_size, symbol_blocks, symbol_stream

QUIET = NoiseParams(0.0, 1e-9, 1e-9)


def test_scenario_validation():
    base = Scenario(noise=QUIET)
    assert base.detectors == ("morph", "map_mixture", "map_genie", "matched")
    assert len(base.filter) == 7
    with pytest.raises(ValueError):
        replace(base, min_errors=0)
    with pytest.raises(ValueError):
        replace(base, max_symbols=5, min_errors=10)
    with pytest.raises(ValueError):
        replace(base, detectors=("bogus",))
    with pytest.raises(ValueError):
        replace(base, detectors=())
    with pytest.raises(ValueError):
        replace(base, se_length=14)
    assert Scenario(noise=QUIET, detectors=("matched", "morph")).detectors == ("morph", "matched")


def test_block_size():
    assert block_size(141) == 144
    assert block_size(144) == 144
    assert Scenario(noise=QUIET).block_words == 144


def test_streams_are_counter_based():
    blocks = symbol_blocks(5, 2, 10, 6, 144)
    for j in range(6):
        gen = symbol_stream(5, 2, 10 + j, 144)
        np.testing.assert_array_equal(gen.bit_generator.random_raw(144), blocks[j])
    assert not np.array_equal(symbol_blocks(5, 3, 10, 1, 144), blocks[:1])
    assert not np.array_equal(symbol_blocks(6, 2, 10, 1, 144), blocks[:1])


def test_vanishing_noise_all_correct():
    scn = Scenario(noise=QUIET)
    truth, decisions = simulate_block(scn, 0, 1000)
    assert set(np.unique(truth)) == {-1, 1}
    for name, d in decisions.items():
        np.testing.assert_array_equal(d, truth, err_msg=name)


def test_run_symbol_deterministic():
    scn = Scenario(noise=NoiseParams(0.05, 1.0, 20.0), master_seed=99)
    a, b = run_symbol(scn, 1234), run_symbol(scn, 1234)
    assert a.truth == b.truth and a.decisions == b.decisions
    np.testing.assert_array_equal(a.r_raw, b.r_raw)
    np.testing.assert_array_equal(a.r_filtered, b.r_filtered)


def test_run_symbol_noise_replays_from_stream():
    scn = Scenario(noise=NoiseParams(0.05, 1.0, 20.0), master_seed=3)
    out = run_symbol(scn, 77, grid_index=2)
    gen = symbol_stream(3, 2, 77, scn.block_words)
    gen.bit_generator.random_raw(1)  # polarity word
    ref = sample_labeled(scn.noise, 70, gen)
    np.testing.assert_array_equal(out.noise.samples, ref.samples)
    np.testing.assert_array_equal(out.noise.labels, ref.labels)
    np.testing.assert_allclose(out.r_raw, out.truth + ref.samples)


def test_block_matches_single_symbol_replay():
    scn = Scenario(noise=NoiseParams(0.05, 2.0, 30.0), master_seed=8)
    truth, decisions = simulate_block(scn, 500, 40, grid_index=1)
    for j in range(40):
        one = run_symbol(scn, 500 + j, grid_index=1)
        assert one.truth == truth[j]
        assert one.decisions == {k: int(v[j]) for k, v in decisions.items()}


def test_paired_realizations_across_detector_sets():
    scn = Scenario(noise=NoiseParams(0.05, 2.0, 30.0), master_seed=4)
    truth_all, all_dec = simulate_block(scn, 0, 3000)
    for name in all_dec:
        truth_one, one = simulate_block(replace(scn, detectors=(name,)), 0, 3000)
        np.testing.assert_array_equal(truth_one, truth_all)
        np.testing.assert_array_equal(one[name], all_dec[name])


@pytest.mark.parametrize("errors,n", [(0, 10), (0, 1000), (1, 10), (5, 50), (100, 10**4), (10, 10), (3, 7)])
def test_wilson_matches_closed_form(errors, n):
    z = norm.ppf(0.975)
    p = errors / n
    centre = (p + z**2 / (2 * n)) / (1 + z**2 / n)
    half = z / (1 + z**2 / n) * math.sqrt(p * (1 - p) / n + z**2 / (4 * n**2))
    low, high = wilson_interval(errors, n)
    assert low == pytest.approx(max(0.0, centre - half), abs=1e-15)
    assert high == pytest.approx(min(1.0, centre + half), abs=1e-15)
    assert 0 <= low <= p <= high <= 1


def test_wilson_against_statsmodels():
    sm = pytest.importorskip("statsmodels.stats.proportion")
    for errors, n in [(0, 100), (7, 300), (150, 151), (42, 10**6)]:
        low, high = sm.proportion_confint(errors, n, alpha=0.05, method="wilson")
        assert wilson_interval(errors, n) == pytest.approx((low, high), abs=1e-12)


def test_stopping_rule_at_one_percent():
    sigma = math.sqrt(70) / norm.isf(1e-2)
    scn = Scenario(noise=NoiseParams(0.0, sigma, sigma), detectors=("map_mixture",), min_errors=100, master_seed=2)
    (p,) = run_ber_point(scn)
    assert p.errors >= 100 and not p.capped
    assert 5_000 <= p.symbols <= 40_000
    assert p.ber == p.errors / p.symbols
    assert p.ci_low <= 1e-2 <= p.ci_high


def test_cap_contract():
    scn = Scenario(noise=NoiseParams(0.0, 0.3, 0.3), min_errors=100, max_symbols=1000)
    for p in run_ber_point(scn):
        assert p.capped and p.symbols == 1000
        assert p.errors == 0 and p.ber == 0 and p.ci_low == 0
        assert 0 < p.ci_high < 0.01


def test_min_errors_met_but_cap_reached_is_not_capped():
    scn = Scenario(noise=NoiseParams(0.0, 20.0, 20.0), detectors=("matched",), min_errors=10, max_symbols=4096)
    (p,) = run_ber_point(scn)
    assert p.symbols == 4096 and p.errors >= 10 and not p.capped


def test_gaussian_map_matches_analytic_tail():
    sigma = 3.0
    scn = Scenario(noise=NoiseParams(0.0, sigma, sigma), detectors=("map_mixture",), min_errors=300, master_seed=17)
    (p,) = run_ber_point(scn)
    assert p.ci_low <= norm.sf(math.sqrt(70) / sigma) <= p.ci_high


def test_monotone_stopping():
    scn = Scenario(noise=NoiseParams(0.0, 3.0, 3.0), detectors=("morph", "matched"), master_seed=5)
    used = [run_ber_point(replace(scn, min_errors=m))[0].symbols for m in (1, 20, 60, 150, 400)]
    assert used == sorted(used)


def test_ber_nondecreasing_in_sigma1():
    bers = {}
    for s1 in (2.5, 3.0, 3.5, 4.5):
        scn = Scenario(noise=NoiseParams(0.0, s1, s1), min_errors=20_000, max_symbols=20_000, master_seed=6)
        for p in run_ber_point(scn):
            bers.setdefault(p.detector, []).append(p.ber)
    for name, curve in bers.items():
        assert curve == sorted(curve), name


def test_sweep_single_point_is_run_ber_point():
    scn = Scenario(noise=NoiseParams(0.01, 1.0, 30.0), min_errors=30, max_symbols=20_000, master_seed=1)
    curves = sweep(scn, [30.0])
    assert {k: v for k, v in curves.items()} == {p.detector: [p] for p in run_ber_point(scn)}


def test_sweep_orders_by_sigma2_and_keeps_grid_seeds():
    scn = Scenario(noise=NoiseParams(0.01, 1.0, 1.0), detectors=("matched",), min_errors=20, max_symbols=30_000, master_seed=1)
    grid = [50.0, 10.0, 30.0]
    curve = sweep(scn, grid)["matched"]
    assert [p.sigma2 for p in curve] == [10.0, 30.0, 50.0]
    # the 30.0 point was grid index 2
    direct = run_ber_point(replace(scn, noise=NoiseParams(0.01, 1.0, 30.0)), grid_index=2)[0]
    assert curve[1] == direct
    assert curve[0].total_std == pytest.approx(math.sqrt(0.99 + 0.01 * 100))


def test_sweep_rejects_empty_grid():
    with pytest.raises(ValueError):
        sweep(Scenario(noise=QUIET), [])
