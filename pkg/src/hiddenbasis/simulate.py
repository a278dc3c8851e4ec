"""Seeded Monte Carlo reproduction of the protocol.

Randomness scheme. A scenario owns the Philox-4x64 key (seed, stream); the
sweep uses stream = k. Trial i reads the single counter block i, i.e. four
64-bit words that depend only on (seed, stream, i):

* words 0-1: a 128-bit uniform u = w / 2^128 picking the outcome l by exact
  comparison against the rational CDF (bias below 2^-128);
* words 2-3: a second 128-bit uniform for the post-process coin.

Statevector trials instead seed a fresh generator from
``SeedSequence(seed, spawn_key=(stream, i))`` and draw x, U, sigma and the
outcome from it. Either way trials are order independent, so any split of
the trial range reproduces the same report.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import oracle
from .inference import (
    SymmetricBooleanFunction,
    TwoSidedPostprocess,
    function_success_profile,
    parity_algorithm,
    standard_strategy,
    threshold_two_sided,
)
from .sampling import success_standard, weight_outcome_distribution

MODES = ("exact", "statevector")
TASKS = ("weight", "threshold", "parity")
DEFAULT_TRIALS = {"exact": 100_000, "statevector": 10_000}
_TWO128 = 1 << 128
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ScenarioConfig:
    n: int
    k: int
    trials: int
    seed: int = 0
    mode: str = "exact"
    task: str = "weight"
    t: int | None = None  # threshold parameter
    stream: int = 0

    def __post_init__(self) -> None:
        mode = "exact" if self.mode == "exact-sampled" else self.mode
        object.__setattr__(self, "mode", mode)
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.task not in TASKS:
            raise ValueError(f"task must be one of {TASKS}, got {self.task!r}")
        if self.n < 1 or not 0 <= self.k <= self.n // 2:
            raise ValueError(f"need n >= 1 and 0 <= k <= floor(n/2) (|x| <= floor(n/2)), got n={self.n}, k={self.k}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if mode == "statevector" and self.n > oracle.MAX_DENSE_QUBITS:
            raise ValueError(f"statevector mode needs n <= {oracle.MAX_DENSE_QUBITS}, got n={self.n}")
        if self.task == "threshold" and self.t is None:
            raise ValueError("threshold task needs t")
        if self.stream < 0:
            raise ValueError("stream must be non-negative")


@dataclass
class TrialReport:
    n: int
    k: int
    task: str
    mode: str
    trials: int
    successes: int
    rate: float
    theory: Fraction
    stderr: float
    z: float
    seed: int
    stream: int
    outcome_counts: dict[int, int] = field(default_factory=dict)


def _philox_key(seed: int, stream: int) -> np.ndarray:
    return np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)


def trial_words(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """Counter blocks start..stop-1 of the (seed, stream) key, shape (stop - start, 4)."""
    if stop <= start:
        return np.zeros((0, 4), dtype=np.uint64)
    gen = np.random.Philox(key=_philox_key(seed, stream), counter=[start, 0, 0, 0])
    return gen.random_raw(4 * (stop - start)).reshape(-1, 4)


def _u128(hi: np.uint64, lo: np.uint64) -> int:
    return (int(hi) << 64) | int(lo)


def _cdf_thresholds(probs: Sequence[Fraction]) -> list[int]:
    """u < CDF(l) iff w < ceil(CDF(l) 2^128) for integer w."""
    out, acc = [], Fraction(0)
    for p in probs:
        acc += p
        out.append(-((-acc.numerator * _TWO128) // acc.denominator))
    return out


def _coin_zero(w: int, q: Fraction) -> bool:
    """True with probability q for w uniform on [0, 2^128)."""
    return w * q.denominator < q.numerator * _TWO128


def _task_setup(cfg: ScenarioConfig) -> tuple[SymmetricBooleanFunction | None, TwoSidedPostprocess | None, Fraction]:
    if cfg.task == "weight":
        return None, None, success_standard(cfg.n, cfg.k)
    if cfg.task == "threshold":
        f = SymmetricBooleanFunction.threshold(cfg.n, cfg.t)
        post = threshold_two_sided(cfg.n, cfg.t)
    else:
        f = SymmetricBooleanFunction.parity(cfg.n)
        post = parity_algorithm(cfg.n)
    theory = function_success_profile(f, standard_strategy(cfg.n), post)[cfg.k]
    return f, post, theory


def _judge(
    cfg: ScenarioConfig,
    ell: int,
    f: SymmetricBooleanFunction | None,
    post: TwoSidedPostprocess | None,
    coin_zero,
) -> bool:
    if f is None:
        return ell == cfg.k
    guess = f(ell) ^ int(post.flip)
    answer = 0 if coin_zero(post.q0 if guess == 0 else post.q1) else 1
    return answer == f(cfg.k)


def _run_exact(cfg: ScenarioConfig, f, post, start: int, stop: int) -> tuple[int, dict[int, int]]:
    dist = weight_outcome_distribution(cfg.n, cfg.k)
    thresholds = _cdf_thresholds([dist[ell] for ell in range(cfg.n // 2 + 1)])
    words = trial_words(cfg.seed, cfg.stream, start, stop)
    successes = 0
    counts: dict[int, int] = {}
    for w0, w1, w2, w3 in words:
        ell = bisect.bisect_right(thresholds, _u128(w0, w1))
        counts[ell] = counts.get(ell, 0) + 1
        coin = _u128(w2, w3)
        successes += _judge(cfg, ell, f, post, lambda q: _coin_zero(coin, q))
    return successes, counts


def scramble_trial(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """A random weight-k string, scrambled by a Haar-random U and a random qubit permutation."""
    bits = np.zeros(n, dtype=int)
    bits[rng.choice(n, size=k, replace=False)] = 1
    u = oracle.haar_local_unitary(rng)
    sigma = oracle.random_permutation(n, rng)
    return oracle.apply_scramble(oracle.basis_state(bits), u, sigma)


def _run_statevector(cfg: ScenarioConfig, f, post, start: int, stop: int) -> tuple[int, dict[int, int]]:
    successes = 0
    counts: dict[int, int] = {}
    for i in range(start, stop):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed & _MASK64, spawn_key=(cfg.stream, i)))
        psi = scramble_trial(cfg.n, cfg.k, rng)
        probs = oracle.measured_distribution(psi)
        cdf = np.cumsum([max(probs[ell], 0.0) for ell in sorted(probs)])
        ell = int(min(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"), len(cdf) - 1))
        counts[ell] = counts.get(ell, 0) + 1
        successes += _judge(cfg, ell, f, post, lambda q: rng.random() < q)
    return successes, counts


def run_trials(cfg: ScenarioConfig, start: int, stop: int) -> tuple[int, dict[int, int]]:
    """(successes, outcome counts) over the trial range [start, stop)."""
    f, post, _ = _task_setup(cfg)
    runner = _run_exact if cfg.mode == "exact" else _run_statevector
    return runner(cfg, f, post, start, stop)


def summarize(cfg: ScenarioConfig, successes: int, counts: dict[int, int], theory: Fraction) -> TrialReport:
    trials = cfg.trials
    rate = successes / trials
    # Laplace-smoothed binomial standard error: stays positive when rate is 0 or 1
    smoothed = (successes + 1) / (trials + 2)
    stderr = math.sqrt(smoothed * (1 - smoothed) / trials)
    z = (rate - float(theory)) / stderr
    return TrialReport(
        n=cfg.n,
        k=cfg.k,
        task=cfg.task,
        mode=cfg.mode,
        trials=trials,
        successes=successes,
        rate=rate,
        theory=theory,
        stderr=stderr,
        z=z,
        seed=cfg.seed,
        stream=cfg.stream,
        outcome_counts=dict(sorted(counts.items())),
    )


def run_scenario(cfg: ScenarioConfig) -> TrialReport:
    _, _, theory = _task_setup(cfg)
    successes, counts = run_trials(cfg, 0, cfg.trials)
    return summarize(cfg, successes, counts, theory)


def sweep(
    n: int,
    task: str = "weight",
    trials: int | None = None,
    seed: int = 0,
    mode: str = "exact",
    t: int | None = None,
) -> list[TrialReport]:
    """One report per k = 0..floor(n/2); weight k runs on stream k."""
    if n < 1:
        raise ValueError("n must be positive")
    trials = DEFAULT_TRIALS["statevector" if mode == "statevector" else "exact"] if trials is None else trials
    return [
        run_scenario(ScenarioConfig(n=n, k=k, trials=trials, seed=seed, mode=mode, task=task, t=t, stream=k))
        for k in range(n // 2 + 1)
    ]
