from fractions import Fraction as F

import numpy as np
import pytest

from hiddenbasis.simulate import (
    ScenarioConfig,
    _cdf_thresholds,
    _coin_zero,
    run_scenario,
    run_trials,
    summarize,
    sweep,
    trial_words,
)
from hiddenbasis.inference import (
    SymmetricBooleanFunction,
    function_success_profile,
    standard_strategy,
    threshold_two_sided,
)
from hiddenbasis.sampling import success_standard


def test_config_validation():
    with pytest.raises(ValueError, match="floor"):
        ScenarioConfig(n=4, k=3, trials=10)
    with pytest.raises(ValueError):
        ScenarioConfig(n=7, k=1, trials=10, mode="statevector")
    with pytest.raises(ValueError):
        ScenarioConfig(n=4, k=1, trials=0)
    with pytest.raises(ValueError):
        ScenarioConfig(n=4, k=1, trials=5, task="threshold")
    with pytest.raises(ValueError):
        ScenarioConfig(n=4, k=1, trials=5, mode="tensor")
    assert ScenarioConfig(n=4, k=1, trials=5, mode="exact-sampled").mode == "exact"


def test_trial_words_are_counter_based():
    whole = trial_words(11, 2, 0, 50)
    parts = np.vstack([trial_words(11, 2, 0, 17), trial_words(11, 2, 17, 50)])
    assert np.array_equal(whole, parts)
    assert np.array_equal(trial_words(11, 2, 30, 31)[0], whole[30])
    assert not np.array_equal(trial_words(11, 3, 0, 50), whole)


def test_cdf_thresholds_exact():
    two128 = 1 << 128
    th = _cdf_thresholds([F(1, 3), F(1, 3), F(1, 3)])
    assert th[-1] == two128
    # w < ceil(2^128 / 3) iff w / 2^128 < 1/3
    assert th[0] * 3 >= two128 and (th[0] - 1) * 3 < two128
    assert _coin_zero(0, F(1, 10)) and not _coin_zero(two128 - 1, F(9, 10))
    assert not _coin_zero(0, F(0)) and _coin_zero(two128 - 1, F(1))


def test_chunked_trials_reproduce_whole_run():
    for mode, n in (("exact", 10), ("statevector", 4)):
        cfg = ScenarioConfig(n=n, k=2, trials=300, seed=5, mode=mode, task="parity")
        s_all, c_all = run_trials(cfg, 0, 300)
        s_a, c_a = run_trials(cfg, 0, 120)
        s_b, c_b = run_trials(cfg, 120, 300)
        assert s_all == s_a + s_b
        assert c_all == {ell: c_a.get(ell, 0) + c_b.get(ell, 0) for ell in c_all}


def test_determinism():
    cfg = ScenarioConfig(n=12, k=3, trials=2000, seed=123, task="threshold", t=2)
    assert run_scenario(cfg) == run_scenario(cfg)
    other = run_scenario(ScenarioConfig(n=12, k=3, trials=2000, seed=124, task="threshold", t=2))
    assert other.outcome_counts != run_scenario(cfg).outcome_counts


def test_weight_zero_always_succeeds():
    for mode in ("exact", "statevector"):
        r = run_scenario(ScenarioConfig(n=4, k=0, trials=200, seed=1, mode=mode))
        assert r.rate == 1.0 and r.stderr > 0 and r.z == pytest.approx(0)


def test_standard_error_positive():
    cfg = ScenarioConfig(n=4, k=1, trials=2)
    for successes in (0, 1, 2):
        assert summarize(cfg, successes, {}, F(1, 2)).stderr > 0


def test_theorem_rate_n20_k5():
    r = run_scenario(ScenarioConfig(n=20, k=5, trials=100_000, seed=2))
    assert r.theory == F(11, 16)
    assert abs(r.z) <= 3


@pytest.mark.slow
def test_statevector_outcome_frequencies_n4_k2():
    r = run_scenario(ScenarioConfig(n=4, k=2, trials=10_000, seed=3, mode="statevector"))
    for ell, p in {0: 1 / 6, 1: 1 / 2, 2: 1 / 3}.items():
        sigma = (p * (1 - p) / r.trials) ** 0.5
        assert abs(r.outcome_counts.get(ell, 0) / r.trials - p) <= 3 * sigma


def test_modes_agree():
    for n, k in ((3, 1), (5, 2), (6, 3)):
        a = run_scenario(ScenarioConfig(n=n, k=k, trials=3000, seed=9, mode="statevector"))
        b = run_scenario(ScenarioConfig(n=n, k=k, trials=10_000, seed=9, mode="exact"))
        pooled = (a.stderr**2 + b.stderr**2) ** 0.5
        assert abs(a.rate - b.rate) <= 4 * pooled


def test_weight_sweeps():
    for n in (8, 20):
        reports = sweep(n, "weight", trials=20_000, seed=4)
        assert [r.k for r in reports] == list(range(n // 2 + 1))
        assert [r.stream for r in reports] == list(range(n // 2 + 1))
        for r in reports:
            assert r.theory == success_standard(n, r.k)
            assert abs(r.z) <= 4


def test_threshold_sweep_matches_profile():
    n, t = 20, 1
    profile = function_success_profile(
        SymmetricBooleanFunction.threshold(n, t), standard_strategy(n), threshold_two_sided(n, t)
    )
    for r in sweep(n, "threshold", trials=20_000, seed=6, t=t):
        assert r.theory == profile[r.k]
        # 11 simultaneous one-sided comparisons: 4 sigma keeps the family-wise false alarm rate tiny
        assert r.rate >= float(profile[r.k]) - 4 * r.stderr


def test_parity_sweep_respects_bound():
    n = 20
    bound = 0.5 + 1 / 42
    reports = sweep(n, "parity", trials=20_000, seed=8)
    worst = min(reports, key=lambda r: r.rate)
    assert worst.rate >= bound - 4 * worst.stderr
    assert all(r.theory >= F(1, 2) + F(1, 42) for r in reports)
