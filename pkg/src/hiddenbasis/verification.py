"""The oracle suite behind ``hiddenbasis verify``.

Each check returns a :class:`CheckResult`; exact checks report a mismatch
count with tolerance 0, numerical ones report the observed max deviation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .repr_theory import (
    Partition,
    character,
    conjugacy_classes,
    dim_irrep,
    dim_two_row,
    partitions,
    trivial_restriction_multiplicity,
)
from .sampling import outcome_probability, weight_outcome_distribution

LEVELS = ("character", "projector")
N_SCRAMBLES = 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    observed: float
    tolerance: float

    @classmethod
    def exact(cls, name: str, mismatches: int) -> "CheckResult":
        return cls(name, mismatches == 0, mismatches, 0)

    @classmethod
    def within(cls, name: str, observed: float, tolerance: float) -> "CheckResult":
        return cls(name, bool(observed <= tolerance), float(observed), tolerance)


def lemma_mismatches(n: int) -> int:
    """Character-sum trace vs the closed form, every k <= n and l <= floor(n/2)."""
    bad = 0
    for k in range(n + 1):
        for ell in range(n // 2 + 1):
            # weight k and n - k give the same statistics
            if oracle.trace_prob_fixedpoint(n, k, ell) != outcome_probability(n, min(k, n - k), ell):
                bad += 1
    return bad


def character_checks(n: int) -> list[CheckResult]:
    results = [CheckResult.exact("lemma1_character_sum", lemma_mismatches(n))]

    bad = sum(
        oracle.multiplicity_trivial_restriction(n, k, nu) != trivial_restriction_multiplicity(n, k, nu)
        for k in range(n + 1)
        for nu in partitions(n)
    )
    results.append(CheckResult.exact("restriction_multiplicity_vs_pieri", bad))

    shapes = list(partitions(n))
    bad = int(sum(dim_irrep(lam) ** 2 for lam in shapes) != math.factorial(n))
    bad += sum(dim_two_row(n, ell) != dim_irrep(Partition.two_row(n, ell)) for ell in range(n // 2 + 1))
    results.append(CheckResult.exact("dimensions", bad))

    if n <= 8:
        classes = conjugacy_classes(n)
        bad = 0
        for lam, mu in itertools.product(shapes, repeat=2):
            inner = sum(size * character(lam, rho) * character(mu, rho) for rho, size in classes)
            bad += inner != (math.factorial(n) if lam == mu else 0)
        results.append(CheckResult.exact("character_orthogonality", bad))

    if n <= 5:
        worst = 0.0
        for lam in shapes:
            for rho, _ in conjugacy_classes(n):
                rep = _representative(rho)
                tr = np.trace(oracle.young_orthogonal_matrix(lam, rep))
                worst = max(worst, abs(tr - character(lam, rho)))
        results.append(CheckResult.within("character_vs_young_matrices", worst, oracle.AGG_TOL))
    return results


def _representative(rho: Partition) -> tuple[int, ...]:
    perm, start = [], 0
    for length in rho:
        block = list(range(start, start + length))
        perm.extend(block[1:] + block[:1])
        start += length
    return tuple(perm)


def projector_checks(n: int, rng: np.random.Generator, scrambles: int = N_SCRAMBLES) -> list[CheckResult]:
    dim = 2**n
    m = n // 2
    projs = [oracle.build_projector(n, Partition.two_row(n, ell)) for ell in range(m + 1)]

    idem = max(np.abs(p @ p - p).max() for p in projs)
    orth = max((np.abs(projs[a] @ projs[b]).max() for a in range(m + 1) for b in range(m + 1) if a != b), default=0.0)
    compl = np.abs(sum(projs) - np.eye(dim)).max()
    traces = max(
        abs(np.trace(projs[ell]) - dim_two_row(n, ell) * (n - 2 * ell + 1)) for ell in range(m + 1)
    )
    beyond = max(
        (np.abs(oracle.build_projector(n, lam)).max() for lam in partitions(n) if len(lam) > 2), default=0.0
    )
    results = [
        CheckResult.within("projector_idempotent", idem, oracle.AGG_TOL),
        CheckResult.within("projector_orthogonal", orth, oracle.AGG_TOL),
        CheckResult.within("projector_complete", compl, oracle.AGG_TOL),
        CheckResult.within("projector_trace", traces, oracle.AGG_TOL),
        CheckResult.within("projector_three_rows_vanish", beyond, oracle.AGG_TOL),
    ]

    comm = 0.0
    for _ in range(scrambles):
        u = oracle.haar_local_unitary(rng)
        sigma = oracle.random_permutation(n, rng)
        g = oracle.permutation_operator(n, sigma) @ oracle.tensor_power(u, n)
        comm = max(comm, max(np.abs(p @ g - g @ p).max() for p in projs))
    results.append(CheckResult.within("projector_commutes_with_scramble", comm, oracle.AGG_TOL))

    inv = 0.0
    for k in range(m + 1):
        exact = weight_outcome_distribution(n, k)
        psi = oracle.basis_state([1] * k + [0] * (n - k))
        for _ in range(scrambles):
            u = oracle.haar_local_unitary(rng)
            sigma = oracle.random_permutation(n, rng)
            got = oracle.measured_distribution(oracle.apply_scramble(psi, u, sigma))
            inv = max(inv, max(abs(got[ell] - float(exact[ell])) for ell in range(m + 1)))
    results.append(CheckResult.within("scrambled_distribution_matches_closed_form", inv, oracle.AGG_TOL))
    return results


def run_suite(n: int, level: str = "character", seed: int = 0) -> list[CheckResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if n < 1:
        raise ValueError("n must be positive")
    results = character_checks(n)
    if level == "projector":
        if n > oracle.MAX_DENSE_QUBITS:
            raise ValueError(f"projector level needs n <= {oracle.MAX_DENSE_QUBITS}")
        results += projector_checks(n, np.random.default_rng(seed))
    return results
