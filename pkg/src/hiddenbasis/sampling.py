"""Exact weak-Schur-sampling statistics for weight-k basis states of n qubits.

Only two-row shapes (n - l, l) carry probability on qubits, so distributions
are keyed by l. All values are ``fractions.Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .repr_theory import binom

# large-n limit of the uniform-prior average success of the standard algorithm
ASYMPTOTIC_AVERAGE_SUCCESS = 2.0 * (1.0 - math.log(2.0))


@dataclass(frozen=True)
class OutcomeDistribution:
    n: int
    probs: dict[int, Fraction]

    def __post_init__(self) -> None:
        if set(self.probs) != set(range(self.n // 2 + 1)):
            raise ValueError("outcome distribution must cover l = 0..floor(n/2)")
        if any(p < 0 or p > 1 for p in self.probs.values()):
            raise ValueError("probabilities must lie in [0, 1]")
        if sum(self.probs.values()) != 1:
            raise ValueError("probabilities must sum to exactly 1")

    def __getitem__(self, ell: int) -> Fraction:
        return self.probs[ell]


def _check_weight(n: int, k: int) -> None:
    if n < 1 or not 0 <= k <= n // 2:
        raise ValueError(f"need n >= 1 and 0 <= k <= floor(n/2) (|x| <= floor(n/2)), got n={n}, k={k}")


def _check_adjacent(n: int, k: int) -> None:
    if n < 1 or not 0 <= k < n // 2:
        raise ValueError(f"need 0 <= k < floor(n/2), got n={n}, k={k}")


@lru_cache(maxsize=65536)
def outcome_probability(n: int, k: int, ell: int) -> Fraction:
    """Pr[l | k]: (C(n,l) - C(n,l-1)) / C(n,k) for l <= k, else 0."""
    if ell > k:
        return Fraction(0)
    return Fraction(binom(n, ell) - binom(n, ell - 1), binom(n, k))


def weight_outcome_distribution(n: int, k: int) -> OutcomeDistribution:
    _check_weight(n, k)
    return OutcomeDistribution(n, {ell: outcome_probability(n, k, ell) for ell in range(n // 2 + 1)})


def l1_distance(p: OutcomeDistribution, q: OutcomeDistribution) -> Fraction:
    if p.n != q.n:
        raise ValueError(f"distributions over different n: {p.n} vs {q.n}")
    return sum((abs(p[ell] - q[ell]) for ell in p.probs), Fraction(0))


def l1_closed_form(n: int, k: int) -> Fraction:
    """||p_k - p_{k+1}||_1 = 2 (n - 2k - 1) / (n - k)."""
    _check_adjacent(n, k)
    return Fraction(2 * (n - 2 * k - 1), n - k)


def distinguish_bound(n: int, k: int) -> Fraction:
    """Best worst-case success for telling weight k from weight k + 1."""
    _check_adjacent(n, k)
    return 1 - Fraction(k + 1, 2 * (n - k))


def success_standard(n: int, k: int) -> Fraction:
    """Pr[k | k] = 1 - k / (n - k + 1)."""
    _check_weight(n, k)
    return 1 - Fraction(k, n - k + 1)


def average_success_uniform(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be positive")
    m = n // 2
    return sum((success_standard(n, k) for k in range(m + 1)), Fraction(0)) / (m + 1)
