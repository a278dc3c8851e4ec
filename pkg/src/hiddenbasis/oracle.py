"""Brute-force checks of the weak-Schur-sampling statistics.

Two independent routes:

* an exact character-sum route over conjugacy classes of S_k x S_{n-k}
  (no state space, usable to n ~ 12);
* a dense-operator route that builds P_lambda on (C^2)^{otimes n} for n <= 6.

Basis convention: qubit 1 is the most significant bit of a basis index.
Permutations are tuples ``perm`` with ``perm[a] = pi(a)`` (0-based), and
D(pi) moves the bit in position a to position pi(a), i.e.
D(pi)|i_1..i_n> = |i_{pi^-1(1)}..i_{pi^-1(n)}>, so D(p1) D(p2) = D(p1 p2).
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .repr_theory import (
    Partition,
    character,
    class_size,
    dim_irrep,
    partitions,
)

MAX_DENSE_QUBITS = 6
ATOL = 1e-10  # element-wise
AGG_TOL = 1e-9  # sums and norms

Permutation = tuple[int, ...]


def compose(p1: Sequence[int], p2: Sequence[int]) -> Permutation:
    """(p1 p2)(a) = p1(p2(a))."""
    return tuple(p1[p2[a]] for a in range(len(p2)))


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, a = 0, start
        while not seen[a]:
            seen[a] = True
            a = perm[a]
            length += 1
        lengths.append(length)
    return Partition(lengths)


def basis_state(bits: Sequence[int]) -> np.ndarray:
    """|x> for a bit string, qubit 1 = most significant bit."""
    n = len(bits)
    psi = np.zeros(2**n, dtype=complex)
    psi[int("".join(str(int(b)) for b in bits), 2) if n else 0] = 1.0
    return psi


def _num_qubits(psi: np.ndarray) -> int:
    n = int(psi.size).bit_length() - 1
    if psi.ndim != 1 or 2**n != psi.size:
        raise ValueError(f"state vector length {psi.size} is not a power of two")
    return n


def permute_qubits(psi: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """D(perm) psi."""
    n = _num_qubits(psi)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} qubits")
    tensor = psi.reshape((2,) * n)
    return np.moveaxis(tensor, list(range(n)), list(perm)).reshape(-1)


def permutation_index_map(n: int, perm: Sequence[int]) -> np.ndarray:
    """dest[b] = index of D(perm)|b>."""
    idx = np.arange(2**n).reshape((2,) * n)
    src = np.moveaxis(idx, list(range(n)), list(perm)).reshape(-1)
    dest = np.empty_like(src)
    dest[src] = np.arange(2**n)
    return dest


def permutation_operator(n: int, perm: Sequence[int]) -> np.ndarray:
    dest = permutation_index_map(n, perm)
    op = np.zeros((2**n, 2**n))
    op[dest, np.arange(2**n)] = 1.0
    return op


def tensor_power(u: np.ndarray, n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = np.kron(out, u)
    return out


def apply_local(psi: np.ndarray, u: np.ndarray) -> np.ndarray:
    """U^{otimes n} psi without forming the 2^n x 2^n matrix."""
    n = _num_qubits(psi)
    tensor = psi.reshape((2,) * n)
    for axis in range(n):
        tensor = np.moveaxis(np.tensordot(u, tensor, axes=([1], [axis])), 0, axis)
    return tensor.reshape(-1)


def _check_dense(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise MemoryError(f"dense operators limited to n <= {MAX_DENSE_QUBITS}, got n={n}")
    if n < 1:
        raise ValueError("need at least one qubit")


@lru_cache(maxsize=None)
def _projector(n: int, parts: tuple[int, ...]) -> np.ndarray:
    lam = Partition(parts)
    dim = 2**n
    proj = np.zeros((dim, dim))
    cols = np.arange(dim)
    for perm in itertools.permutations(range(n)):
        chi = character(lam, cycle_type(perm))
        if chi:
            proj[permutation_index_map(n, perm), cols] += chi
    proj *= dim_irrep(lam) / math.factorial(n)
    proj.setflags(write=False)
    return proj


def build_projector(n: int, lam: Partition) -> np.ndarray:
    """P_lambda = (d_lambda / n!) sum_pi chi_lambda(pi) D(pi), as a dense real matrix."""
    _check_dense(n)
    if lam.n != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    return _projector(n, lam.parts)


def measured_distribution(psi: np.ndarray) -> dict[int, float]:
    """l -> <psi| P_(n-l, l) |psi> for every two-row outcome."""
    n = _num_qubits(psi)
    _check_dense(n)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"state not normalised: <psi|psi> = {norm}")
    out = {}
    for ell in range(n // 2 + 1):
        value = np.vdot(psi, build_projector(n, Partition.two_row(n, ell)) @ psi)
        out[ell] = float(value.real)
    return out


def haar_local_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of U(2): QR of a complex Ginibre matrix with R's diagonal made positive."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    return tuple(int(a) for a in rng.permutation(n))


def apply_scramble(psi: np.ndarray, u: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    """D(sigma) U^{otimes n} psi."""
    out = permute_qubits(apply_local(psi, u), sigma)
    norm = np.linalg.norm(out)
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"scrambled state not normalised (|psi| = {norm}); is U unitary?")
    return out


def _young_class_sum(n: int, k: int, lam: Partition) -> int:
    """sum over pi in S_k x S_{n-k} of chi_lam(pi), summed class by class."""
    total = 0
    for rho1 in partitions(k):
        for rho2 in partitions(n - k):
            rho = Partition(rho1.parts + rho2.parts)
            total += class_size(rho1) * class_size(rho2) * character(lam, rho)
    return total


def trace_prob_fixedpoint(n: int, k: int, ell: int) -> Fraction:
    """tr(P_(n-l,l) |x><x|) for |x| = k, via the stabiliser S_k x S_{n-k} of x."""
    if not 0 <= k <= n or not 0 <= ell <= n // 2:
        raise ValueError(f"need 0 <= k <= n and 0 <= l <= floor(n/2), got n={n}, k={k}, l={ell}")
    lam = Partition.two_row(n, ell)
    return Fraction(dim_irrep(lam) * _young_class_sum(n, k, lam), math.factorial(n))


def multiplicity_trivial_restriction(n: int, k: int, lam: Partition) -> int:
    """Copies of the trivial irrep in V_lam restricted to S_k x S_{n-k}, by character sum."""
    if lam.n != n or not 0 <= k <= n:
        raise ValueError(f"need lam |- n and 0 <= k <= n, got lam={lam}, n={n}, k={k}")
    mult, rem = divmod(_young_class_sum(n, k, lam), math.factorial(k) * math.factorial(n - k))
    if rem:
        raise ArithmeticError(f"non-integral multiplicity for lam={lam}, k={k}")
    return mult


# -- Young's orthogonal form: explicit irrep matrices, independent of characters --


def standard_tableaux(lam: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux of shape ``lam`` (entries 0..n-1)."""
    n = lam.n
    results = []

    def fill(rows: list[list[int]], m: int) -> None:
        if m == n:
            results.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            j = len(rows[i])
            if j < lam[i] and (i == 0 or len(rows[i - 1]) > j):
                rows[i].append(m)
                fill(rows, m + 1)
                rows[i].pop()

    fill([[] for _ in range(len(lam))], 0)
    return results


def young_orthogonal_generators(lam: Partition) -> list[np.ndarray]:
    """Matrices of the adjacent transpositions (i, i+1), i = 0..n-2, in V_lam."""
    tableaux = standard_tableaux(lam)
    index = {t: a for a, t in enumerate(tableaux)}
    d = len(tableaux)
    gens = []
    for i in range(lam.n - 1):
        mat = np.zeros((d, d))
        for a, t in enumerate(tableaux):
            pos = {v: (r, c) for r, row in enumerate(t) for c, v in enumerate(row)}
            (r1, c1), (r2, c2) = pos[i], pos[i + 1]
            axial = (c2 - r2) - (c1 - r1)
            mat[a, a] = 1.0 / axial
            if r1 != r2 and c1 != c2:
                swapped = tuple(
                    tuple(i + 1 if v == i else i if v == i + 1 else v for v in row) for row in t
                )
                mat[index[swapped], a] = math.sqrt(1.0 - 1.0 / axial**2)
        gens.append(mat)
    return gens


def young_orthogonal_matrix(lam: Partition, perm: Sequence[int]) -> np.ndarray:
    """V_lam(perm), built as a product of adjacent transpositions."""
    gens = young_orthogonal_generators(lam)
    n = len(perm)
    word = []
    arr = list(perm)
    # bubble sort: arr = s_{w1} ... s_{wm} applied to identity
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i)
    # each swap is a right multiplication, so perm = s_{wm} ... s_{w1}
    mat = np.eye(len(standard_tableaux(lam)))
    for i in reversed(word):
        mat = mat @ gens[i]
    return mat
