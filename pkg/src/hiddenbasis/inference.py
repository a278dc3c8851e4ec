"""Classical post-processing of weak-Schur-sampling outcomes.

A strategy is a column-stochastic matrix O with O[k][l] = Pr[guess k | outcome l],
k, l = 0..floor(n/2). Boolean functions of the weight are handled by guessing
k with a strategy and then randomising the answer with a two-parameter
(q0, q1) post-process that balances the two one-sided errors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import simplex
from .repr_theory import binom
from .sampling import outcome_probability


class DegenerateFunctionError(ValueError):
    """The requested boolean function is constant on 0..floor(n/2)."""


def _m(n: int) -> int:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return n // 2


@dataclass(frozen=True)
class StrategyMatrix:
    n: int
    entries: tuple[tuple[Fraction, ...], ...]  # entries[k][l]

    def __post_init__(self) -> None:
        size = _m(self.n) + 1
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise ValueError(f"strategy for n={self.n} must be {size}x{size}")
        for row in self.entries:
            if any(not 0 <= v <= 1 for v in row):
                raise ValueError("strategy entries must lie in [0, 1]")
        for ell in range(size):
            if sum(row[ell] for row in self.entries) != 1:
                raise ValueError(f"column {ell} of the strategy does not sum to 1")

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Iterable]) -> "StrategyMatrix":
        return cls(n, tuple(tuple(Fraction(v) for v in row) for row in rows))

    @classmethod
    def deterministic(cls, n: int, guess: Iterable[int]) -> "StrategyMatrix":
        """Outcome l always maps to guess[l]."""
        size = _m(n) + 1
        guess = list(guess)
        return cls.from_rows(n, [[int(guess[ell] == k) for ell in range(size)] for k in range(size)])

    def __getitem__(self, kl: tuple[int, int]) -> Fraction:
        k, ell = kl
        return self.entries[k][ell]

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Prior:
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("prior weights must be non-negative")
        if sum(self.weights) != 1:
            raise ValueError("prior must sum to exactly 1")

    @classmethod
    def uniform(cls, n: int) -> "Prior":
        size = _m(n) + 1
        return cls(tuple(Fraction(1, size) for _ in range(size)))

    @classmethod
    def point_mass(cls, n: int, k0: int) -> "Prior":
        size = _m(n) + 1
        if not 0 <= k0 < size:
            raise ValueError(f"k0={k0} outside 0..{size - 1}")
        return cls(tuple(Fraction(int(k == k0)) for k in range(size)))

    @classmethod
    def from_weights(cls, n: int, weights: dict[int, Fraction]) -> "Prior":
        """Normalise non-negative weights given as {k: w}; missing k get weight 0."""
        size = _m(n) + 1
        bad = [k for k in weights if not 0 <= k < size]
        if bad:
            raise ValueError(f"prior weights for k outside 0..{size - 1}: {bad}")
        if any(w < 0 for w in weights.values()):
            raise ValueError("prior weights must be non-negative")
        total = sum(weights.values(), Fraction(0))
        if total == 0:
            raise ValueError("prior weights sum to zero")
        return cls(tuple(Fraction(weights.get(k, 0)) / total for k in range(size)))

    def __getitem__(self, k: int) -> Fraction:
        return self.weights[k]


@dataclass(frozen=True)
class SymmetricBooleanFunction:
    n: int
    values: tuple[int, ...]  # f(k) for k = 0..floor(n/2)
    name: str = "f"

    def __post_init__(self) -> None:
        if len(self.values) != _m(self.n) + 1 or any(v not in (0, 1) for v in self.values):
            raise ValueError(f"need one 0/1 value per k = 0..{self.n // 2}")

    def __call__(self, k: int) -> int:
        return self.values[k]

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    @classmethod
    def threshold(cls, n: int, t: int) -> "SymmetricBooleanFunction":
        """Th_t(k) = 1 iff k >= t."""
        f = cls(n, tuple(int(k >= t) for k in range(_m(n) + 1)), f"threshold({t})")
        if f.is_constant:
            raise DegenerateFunctionError(f"threshold t={t} is constant for n={n}; need 1 <= t <= {n // 2}")
        return f

    @classmethod
    def parity(cls, n: int) -> "SymmetricBooleanFunction":
        f = cls(n, tuple(k % 2 for k in range(_m(n) + 1)), "parity")
        if f.is_constant:
            raise DegenerateFunctionError(f"parity is constant on k <= floor(n/2) for n={n}; need n >= 2")
        return f


@dataclass(frozen=True)
class TwoSidedPostprocess:
    """Answer 0 w.p. q0 when the guessed value is 0, w.p. q1 when it is 1.

    With ``flip`` set the guessed value is complemented before q0/q1 are
    applied. ``p0``/``p1`` are the worst-case Pr[guess = 0 | f = 0] and
    Pr[guess = 0 | f = 1] (after any flip) the parameters were tuned for.
    """

    q0: Fraction
    q1: Fraction
    success: Fraction
    p0: Fraction | None = None
    p1: Fraction | None = None
    flip: bool = False

    def __post_init__(self) -> None:
        if not (0 <= self.q0 <= 1 and 0 <= self.q1 <= 1):
            raise ValueError("q0, q1 must lie in [0, 1]")

    @classmethod
    def constant(cls, value: int) -> "TwoSidedPostprocess":
        q = Fraction(1 - value)
        return cls(q, q, Fraction(1))

    def prob_output_zero(self, guess_zero_prob: Fraction) -> Fraction:
        g = 1 - guess_zero_prob if self.flip else guess_zero_prob
        return self.q0 * g + self.q1 * (1 - g)


# -- strategies for reconstructing the weight --


def standard_strategy(n: int) -> StrategyMatrix:
    """Guess k = l."""
    size = _m(n) + 1
    return StrategyMatrix.from_rows(n, [[int(k == ell) for ell in range(size)] for k in range(size)])


def success_by_weight(o: StrategyMatrix, n: int) -> list[Fraction]:
    """Pr[guess = k | weight k] for each k."""
    return [
        sum((o[k, ell] * outcome_probability(n, k, ell) for ell in range(k + 1)), Fraction(0))
        for k in range(o.size)
    ]


def worst_case_success(o: StrategyMatrix, n: int) -> Fraction:
    _check_strategy(o, n)
    return min(success_by_weight(o, n))


def bayes_success(o: StrategyMatrix, prior: Prior, n: int) -> Fraction:
    _check_strategy(o, n)
    if len(prior.weights) != o.size:
        raise ValueError("prior and strategy sizes differ")
    return sum((p * s for p, s in zip(prior.weights, success_by_weight(o, n))), Fraction(0))


def _check_strategy(o: StrategyMatrix, n: int) -> None:
    if o.n != n:
        raise ValueError(f"strategy built for n={o.n}, evaluated at n={n}")


def optimal_worst_case_strategy(n: int) -> tuple[StrategyMatrix, Fraction]:
    """Exact LP: maximise t s.t. every weight is guessed w.p. >= t."""
    size = _m(n) + 1
    nvar = size * size + 1  # O[k][l] at k*size + l, then t
    c = [0] * (nvar - 1) + [1]
    a_ub, b_ub = [], []
    for k in range(size):
        row = [Fraction(0)] * nvar
        for ell in range(k + 1):
            row[k * size + ell] = -outcome_probability(n, k, ell)
        row[-1] = Fraction(1)
        a_ub.append(row)
        b_ub.append(0)
    a_eq, b_eq = [], []
    for ell in range(size):
        row = [0] * nvar
        for k in range(size):
            row[k * size + ell] = 1
        a_eq.append(row)
        b_eq.append(1)
    res = simplex.maximize(c, a_ub, b_ub, a_eq, b_eq)
    o = StrategyMatrix(n, tuple(tuple(res.x[k * size : (k + 1) * size]) for k in range(size)))
    value = res.value
    if worst_case_success(o, n) != value:
        raise ArithmeticError("LP optimum inconsistent with its strategy")
    return o, value


def bayes_optimal_strategy(n: int, prior: Prior) -> StrategyMatrix:
    """Column l picks argmax_{k >= l} p_k / C(n, k), ties to the smallest k."""
    size = _m(n) + 1
    if len(prior.weights) != size:
        raise ValueError(f"prior must have {size} weights for n={n}")
    guess = []
    for ell in range(size):
        guess.append(max(range(ell, size), key=lambda k: (prior[k] / binom(n, k), -k)))
    return StrategyMatrix.deterministic(n, guess)


# -- boolean functions of the weight --


def threshold_one_sided(n: int, t: int) -> tuple[dict[int, Fraction], Fraction]:
    """Failure of guessing Th_t(l) after the standard algorithm: per weight and worst case."""
    m = _m(n)
    if not 1 <= t <= m:
        raise DegenerateFunctionError(f"threshold t={t} is constant on k <= {m}; need 1 <= t <= floor(n/2) = {m}")
    failure = {k: Fraction(0) if k < t else Fraction(binom(n, t - 1), binom(n, k)) for k in range(m + 1)}
    return failure, max(failure.values())


def two_sided_postprocess(p0: Fraction, p1: Fraction) -> TwoSidedPostprocess:
    """Best (q0, q1) given p_i = Pr[guess 0 | f = i], assuming p0 >= p1."""
    p0, p1 = Fraction(p0), Fraction(p1)
    if not 0 <= p1 <= p0 <= 1:
        raise ValueError(f"need 0 <= p1 <= p0 <= 1, got p0={p0}, p1={p1}; relabel the guess first")
    s = p0 + p1
    q0 = Fraction(1) if s <= 1 else 1 / s
    q1 = Fraction(0) if s >= 1 else (1 - s) / (2 - s)
    success = p0 / s if s >= 1 else (1 - p1) / (2 - s)
    achieved = min(q0 * p0 + q1 * (1 - p0), (1 - q0) * p1 + (1 - q1) * (1 - p1))
    if achieved != success:
        raise ArithmeticError("two-sided post-process does not balance the errors")
    return TwoSidedPostprocess(q0, q1, success, p0, p1)


def guess_distribution(o: StrategyMatrix, n: int, k: int) -> list[Fraction]:
    """Pr[guess = j | weight k]."""
    dist = [Fraction(0)] * o.size
    for ell in range(k + 1):
        p = outcome_probability(n, k, ell)
        for j in range(o.size):
            if o[j, ell]:
                dist[j] += o[j, ell] * p
    return dist


def _guess_zero_prob(f: SymmetricBooleanFunction, o: StrategyMatrix, n: int, k: int) -> Fraction:
    dist = guess_distribution(o, n, k)
    return sum((p for j, p in enumerate(dist) if f(j) == 0), Fraction(0))


def function_success_profile(
    f: SymmetricBooleanFunction, o: StrategyMatrix, post: TwoSidedPostprocess | None = None
) -> dict[int, Fraction]:
    """Pr[answer = f(k) | weight k] for each k."""
    n = o.n
    if f.n != n:
        raise ValueError("function and strategy disagree on n")
    profile = {}
    for k in range(o.size):
        g0 = _guess_zero_prob(f, o, n, k)
        out0 = g0 if post is None else post.prob_output_zero(g0)
        profile[k] = out0 if f(k) == 0 else 1 - out0
    return profile


def balanced_postprocess(f: SymmetricBooleanFunction, o: StrategyMatrix | None = None) -> TwoSidedPostprocess:
    """Worst-case p0, p1 of guess-then-evaluate, relabelled so p0 >= p1, then balanced."""
    if f.is_constant:
        raise DegenerateFunctionError("constant function needs no measurement")
    n = f.n
    o = standard_strategy(n) if o is None else o
    zero_probs = {k: _guess_zero_prob(f, o, n, k) for k in range(o.size)}
    p0 = min(v for k, v in zero_probs.items() if f(k) == 0)
    p1 = max(v for k, v in zero_probs.items() if f(k) == 1)
    if p1 <= p0:
        return two_sided_postprocess(p0, p1)
    # complemented guess: worst cases swap to max/min of the complemented probabilities
    p0c = min(1 - v for k, v in zero_probs.items() if f(k) == 0)
    p1c = max(1 - v for k, v in zero_probs.items() if f(k) == 1)
    post = two_sided_postprocess(p0c, p1c)
    return TwoSidedPostprocess(post.q0, post.q1, post.success, post.p0, post.p1, flip=True)


def threshold_two_sided(n: int, t: int) -> TwoSidedPostprocess:
    """Two-sided threshold test; worst-case success (n - t + 1) / (n + 1)."""
    _, worst_failure = threshold_one_sided(n, t)
    post = balanced_postprocess(SymmetricBooleanFunction.threshold(n, t))
    if post.p0 != 1 or post.p1 != worst_failure:
        raise ArithmeticError("threshold error probabilities disagree with the closed form")
    return post


def parity_even_probability(n: int, k: int) -> Fraction:
    """Pr[standard guess is even | weight k]: 1 - k/n for even k, k/n for odd k."""
    m = _m(n)
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= floor(n/2) = {m}, got k={k}")
    closed = 1 - Fraction(k, n) if k % 2 == 0 else Fraction(k, n)
    direct = sum((outcome_probability(n, k, ell) for ell in range(0, k + 1, 2)), Fraction(0))
    if closed != direct:
        raise ArithmeticError(f"parity closed form disagrees with direct sum at n={n}, k={k}")
    return closed


def parity_algorithm(n: int) -> TwoSidedPostprocess:
    if n < 2:
        raise DegenerateFunctionError(f"parity is constant on k <= floor(n/2) for n={n}; need n >= 2")
    f = SymmetricBooleanFunction.parity(n)
    post = balanced_postprocess(f)
    evens = [parity_even_probability(n, k) for k in range(0, n // 2 + 1, 2)]
    odds = [parity_even_probability(n, k) for k in range(1, n // 2 + 1, 2)]
    if not post.flip and (post.p0 != min(evens) or post.p1 != max(odds)):
        raise ArithmeticError("parity error probabilities disagree with the closed form")
    return post
