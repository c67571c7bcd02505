"""Brute-force ground truth for small systems.

Nothing here is meant to be fast: node weights come from the full coefficient
table, the Bell law from explicit overlaps with Bell vectors, and path
differences from literal enumeration of suffixes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .bell import SIGNS, BellPairOutcome
from .pauli_core import AXES, DenseState, Prefix, check_dense_size, pauli_coefficients

MAX_BELL_QUBITS = 6
CLAMP_TOL = 1e-9

# Bell vectors in the (copy 1, copy 2) basis |00>, |01>, |10>, |11>.
_S = 1 / np.sqrt(2)
BELL_VECTORS = {
    BellPairOutcome.PHI_PLUS: np.array([_S, 0, 0, _S], dtype=complex),
    BellPairOutcome.PHI_MINUS: np.array([_S, 0, 0, -_S], dtype=complex),
    BellPairOutcome.PSI_PLUS: np.array([0, _S, _S, 0], dtype=complex),
    BellPairOutcome.PSI_MINUS: np.array([0, _S, -_S, 0], dtype=complex),
}


def _clamp(value: float) -> float:
    if value < 0:
        if value < -CLAMP_TOL:
            raise ArithmeticError(f"node weight {value:.3e} is negative beyond tolerance")
        return 0.0
    return float(value)


def node_value_exact(rho: DenseState, mu: Prefix | str) -> float:
    """Exact ``K_mu``: sum of ``c_nu^2`` over all full strings starting with ``mu``."""
    mu = Prefix(mu)
    if len(mu) > rho.n:
        raise ValueError(f"prefix {mu} longer than n = {rho.n}")
    c = pauli_coefficients(rho)
    return _clamp(float(np.sum(c[tuple(mu)] ** 2)))


def node_values_exact(rho: DenseState) -> dict[Prefix, float]:
    """``K_mu`` for every prefix of length ``0..n``, computed bottom-up from one table."""
    sq = pauli_coefficients(rho) ** 2
    out: dict[Prefix, float] = {}
    level = sq
    for k in range(rho.n, -1, -1):
        for idx in itertools.product(range(4), repeat=k):
            out[Prefix(idx)] = _clamp(float(level[idx]))
        if k:
            level = level.sum(axis=-1)
    return out


@dataclass(frozen=True)
class BellDistribution:
    """Exact law of one Bell-sampling run on ``rho (x) rho``.

    ``probs[i]`` is the probability of ``outcomes[i]``, where outcome index ``i``
    reads the codes as base-4 digits with pair 0 most significant.
    """

    n: int
    probs: np.ndarray

    @property
    def outcomes(self) -> np.ndarray:
        return all_outcomes(self.n)

    def __getitem__(self, key: str) -> float:
        if len(key) != self.n:
            raise KeyError(key)
        return float(self.probs[int(key, 4)])

    def as_dict(self) -> dict[str, float]:
        return {"".join(map(str, row)): float(p) for row, p in zip(self.outcomes, self.probs)}


def all_outcomes(n: int) -> np.ndarray:
    """All ``4^n`` runs as an ``(4^n, n)`` code array in outcome-index order."""
    idx = np.arange(4**n)
    digits = [(idx // 4 ** (n - 1 - k)) % 4 for k in range(n)]
    return np.stack(digits, axis=1).astype(np.uint8) if n else np.zeros((1, 0), np.uint8)


def _pair_matrix(tag: BellPairOutcome) -> np.ndarray:
    # amplitude of |i j> as a 2x2 matrix B[i, j]
    return BELL_VECTORS[tag].reshape(2, 2)


def bell_distribution_dense(rho: DenseState, chunk: int = 256) -> BellDistribution:
    """Exact Bell-outcome law ``p(b) = <b| rho (x) rho |b>``.

    With ``|b> = sum_ij B_ij |i>|j>`` where ``B`` is the Kronecker product of the
    per-pair amplitude matrices, ``p(b) = sum_ij conj(B_ij) (rho B rho^T)_ij``.
    """
    n = rho.n
    check_dense_size(n, MAX_BELL_QUBITS)
    outs = all_outcomes(n)
    mats = np.stack([_pair_matrix(BellPairOutcome(t)) for t in range(4)])
    r, rt = rho.matrix, rho.matrix.T
    probs = np.empty(len(outs))
    for start in range(0, len(outs), chunk):
        block = outs[start : start + chunk]
        bs = np.stack([reduce(np.kron, mats[row]) for row in block])
        vals = np.einsum("kij,kij->k", bs.conj(), r @ bs @ rt)
        if np.max(np.abs(vals.imag)) > 1e-10:
            raise ArithmeticError("Bell probabilities have a non-negligible imaginary part")
        probs[start : start + len(block)] = vals.real
    if probs.min() < -1e-10:
        raise ArithmeticError(f"negative Bell probability {probs.min():.3e}")
    probs = np.clip(probs, 0.0, None)
    if abs(probs.sum() - 1) > 1e-10:
        raise ArithmeticError(f"Bell probabilities sum to {probs.sum()!r}")
    probs.setflags(write=False)
    return BellDistribution(n, probs)


def run_sign(run, nu) -> int:
    """Sign ``s(P_nu (x) P_nu)`` read off a run for a string aligned with the run's tail."""
    offset = len(run) - len(nu)
    s = 1
    for k, sym in enumerate(nu):
        s *= int(SIGNS[int(run[offset + k]), int(sym)])
    return s


def delta_paths_enumerated(run, r: int) -> int:
    """``paths+(r) - paths-(r)`` by listing every suffix of length ``n - r``."""
    n = len(run)
    if not 0 <= r <= n:
        raise ValueError(f"position r = {r} outside 0..{n}")
    check_dense_size(n)
    tail = tuple(run[r:])
    plus = minus = 0
    for suffix in itertools.product(AXES, repeat=n - r):
        if run_sign(tail, suffix) > 0:
            plus += 1
        else:
            minus += 1
    return plus - minus
