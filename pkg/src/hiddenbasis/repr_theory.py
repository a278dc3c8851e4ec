"""Partitions, Young diagrams and the representation theory of S_n.

Everything here is exact integer arithmetic. Characters use the
Murnaghan-Nakayama rule on beta-sets (rim-hook removal = moving a bead
down the abacus), memoised per (shape, remaining cycle type).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


def binom(n: int, k: int) -> int:
    """Binomial coefficient with C(n, k) = 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True, order=True)
class Partition:
    """A Young diagram, stored as a non-increasing tuple of positive parts.

    Input parts are sorted on construction; zero or negative parts are
    rejected.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()) -> None:
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def row(self, i: int) -> int:
        """Length of row ``i`` (0-based); 0 past the last row."""
        return self.parts[i] if i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self.parts) for j in range(p)]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @classmethod
    def two_row(cls, n: int, ell: int) -> "Partition":
        """The shape (n - ell, ell)."""
        if not 0 <= ell <= n // 2:
            raise ValueError(f"need 0 <= ell <= floor(n/2), got n={n}, ell={ell}")
        return cls(p for p in (n - ell, ell) if p > 0)


# a cycle type is just a partition read as cycle lengths
CycleType = Partition


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    for parts in _partitions(n, n if max_part is None else max_part):
        yield Partition(parts)


def _partitions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def hook_lengths(lam: Partition) -> list[list[int]]:
    """Hook length of every box, row by row."""
    conj = lam.conjugate()
    return [
        [(lam[i] - j - 1) + (conj[j] - i - 1) + 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


def dim_irrep(lam: Partition) -> int:
    """Dimension of the S_n irrep labelled by ``lam`` (hook-length formula)."""
    prod = math.prod(h for row in hook_lengths(lam) for h in row)
    d, rem = divmod(math.factorial(lam.n), prod)
    if rem:
        raise ArithmeticError(f"hook product does not divide n! for {lam}")
    return d


def dim_two_row(n: int, ell: int) -> int:
    """d_(n-ell, ell) = C(n, ell) (n - 2 ell + 1) / (n - ell + 1)."""
    if n < 0 or not 0 <= ell <= n // 2:
        raise ValueError(f"need 0 <= ell <= floor(n/2), got n={n}, ell={ell}")
    d, rem = divmod(binom(n, ell) * (n - 2 * ell + 1), n - ell + 1)
    if rem:
        raise ArithmeticError(f"two-row dimension not integral for n={n}, ell={ell}")
    return d


def _beta_set(parts: Sequence[int]) -> tuple[int, ...]:
    m = len(parts)
    return tuple(p + m - 1 - i for i, p in enumerate(parts))


def _from_beta_set(beta: Iterable[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    m = len(beta)
    return tuple(p for p in (b - (m - 1 - i) for i, b in enumerate(beta)) if p > 0)


@lru_cache(maxsize=None)
def _mn(parts: tuple[int, ...], rho: tuple[int, ...]) -> int:
    if not rho:
        return 1 if not parts else 0
    r, rest = rho[0], rho[1:]
    beta = _beta_set(parts)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        # leg length = beads jumped over
        height = sum(1 for c in beta if target < c < b)
        moved = [target if c == b else c for c in beta]
        sign = -1 if height % 2 else 1
        total += sign * _mn(_from_beta_set(moved), rest)
    return total


def character(lam: Partition, rho: CycleType) -> int:
    """Character of the irrep ``lam`` on the conjugacy class with cycle type ``rho``."""
    if lam.n != rho.n:
        raise ValueError(f"size mismatch: |lambda|={lam.n}, |rho|={rho.n}")
    return _mn(lam.parts, rho.parts)


def is_horizontal_strip(lam: Partition, nu: Partition) -> bool:
    """True when ``nu`` contains ``lam`` and nu/lam has no two boxes in one column."""
    if len(nu) > len(lam) + 1:
        return False
    for i in range(len(nu)):
        if nu.row(i) < lam.row(i):
            return False
        if i > 0 and nu.row(i) > lam.row(i - 1):
            return False
    return len(lam) <= len(nu)


def pieri_multiplicity(lam: Partition, r: int, nu: Partition) -> int:
    """Multiplicity of ``nu`` in lam x (r): 1 iff nu/lam is a horizontal r-strip."""
    if lam.n + r != nu.n or r < 0:
        raise ValueError(f"size mismatch: |lambda| + r = {lam.n + r} but |nu| = {nu.n}")
    return int(is_horizontal_strip(lam, nu))


def trivial_restriction_multiplicity(n: int, k: int, nu: Partition) -> int:
    """Copies of the trivial irrep in V_nu restricted to S_k x S_{n-k}."""
    if nu.n != n or not 0 <= k <= n:
        raise ValueError(f"need nu |- n and 0 <= k <= n, got nu={nu}, n={n}, k={k}")
    start = Partition([k] if k else [])
    return pieri_multiplicity(start, n - k, nu)


def centralizer_order(rho: CycleType) -> int:
    """z_rho = prod_i i^{m_i} m_i!."""
    z = 1
    for part in set(rho.parts):
        m = rho.parts.count(part)
        z *= part**m * math.factorial(m)
    return z


def class_size(rho: CycleType) -> int:
    return math.factorial(rho.n) // centralizer_order(rho)


def conjugacy_classes(n: int) -> list[tuple[CycleType, int]]:
    """(cycle type, class size) for every conjugacy class of S_n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [(rho, class_size(rho)) for rho in partitions(n)]
