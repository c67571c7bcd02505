"""Sources of Bell-sampling data, plus the SWAP-test node estimator.

Every sampler is a pure function of its inputs and ``seed``; anything accepted by
:func:`numpy.random.default_rng` works as a seed.
"""

from __future__ import annotations

import numpy as np

from .bell import BellPairOutcome, SampleSet
from .oracle import MAX_BELL_QUBITS, bell_distribution_dense
from .pauli_core import DenseState, Prefix, check_dense_size, pauli_matrix
from .tableau import StabilizerTableau

MAX_STABILIZER_QUBITS = 16
GATES_PER_QUBIT_SQUARED = 10


def _seed_label(seed):
    return seed if isinstance(seed, (int, np.integer)) or seed is None else repr(seed)


def sample_dense(rho: DenseState, M: int, seed=None) -> SampleSet:
    """Inverse-transform sampling from the exact Bell law of ``rho (x) rho``."""
    check_dense_size(rho.n, MAX_BELL_QUBITS)
    if M < 0:
        raise ValueError("M must be non-negative")
    dist = bell_distribution_dense(rho)
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(dist.probs)
    idx = np.searchsorted(cdf, rng.random(M) * cdf[-1], side="right")
    idx = np.minimum(idx, len(cdf) - 1)
    return SampleSet(rho.n, dist.outcomes[idx], source="dense", seed=_seed_label(seed))


def sample_stabilizer(
    tab: StabilizerTableau, M: int, seed=None, max_qubits: int = MAX_STABILIZER_QUBITS
) -> SampleSet:
    """Bell sampling of ``psi (x) psi`` for a stabilizer state ``psi``.

    On the doubled ``2n``-qubit tableau, each pair ``(i, i + n)`` gets a CNOT from
    ``i`` to ``i + n`` and a Hadamard on ``i``; measuring then yields bits ``(a, b)``
    with Bell code ``a + 2 b``.
    """
    tab.validate()
    n = tab.n
    if n > max_qubits:
        raise ValueError(f"stabilizer sampling limited to n <= {max_qubits}, got {n}")
    if M < 0:
        raise ValueError("M must be non-negative")
    work = tab.doubled()
    for i in range(n):
        work.cnot(i, i + n)
        work.h(i)
    x0, basis = work.measurement_support()
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, 2, size=(M, len(basis)), dtype=np.uint8)
    bits = (coeffs.astype(np.int64) @ basis.astype(np.int64) + x0) % 2
    codes = bits[:, :n] + 2 * bits[:, n:]
    return SampleSet(n, codes.astype(np.uint8), source="stabilizer", seed=_seed_label(seed))


# Bell tags carrying X sign +1 / -1.
_X_PLUS = np.array([BellPairOutcome.PHI_PLUS, BellPairOutcome.PSI_PLUS], np.uint8)
_X_MINUS = np.array([BellPairOutcome.PHI_MINUS, BellPairOutcome.PSI_MINUS], np.uint8)


def sample_pauli_singleton(n: int, M: int, seed=None) -> SampleSet:
    """Bell sampling of ``(I^n + X^n) / 2^n`` from its closed-form law.

    ``p(b) = 4^-n (1 + prod_i s_X(b_i))``: per-pair X signs are uniform subject to
    an even number of minus signs, and each sign picks one of its two Bell tags
    uniformly.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if M < 0:
        raise ValueError("M must be non-negative")
    rng = np.random.default_rng(seed)
    minus = rng.integers(0, 2, size=(M, n), dtype=np.uint8)
    # the last pair fixes the parity
    minus[:, -1] = np.bitwise_xor.reduce(minus[:, :-1], axis=1) if n > 1 else 0
    which = rng.integers(0, 2, size=(M, n))
    codes = np.where(minus == 1, _X_MINUS[which], _X_PLUS[which])
    return SampleSet(n, codes.astype(np.uint8), source="singleton", seed=_seed_label(seed))


def random_stabilizer(n: int, seed=None, gates: int | None = None) -> StabilizerTableau:
    """Random walk of uniformly chosen H / S / CNOT gates from ``|0...0>``.

    The walk has ``10 n^2`` gates unless ``gates`` is given. It does not sample the
    Clifford group uniformly.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    tab = StabilizerTableau.zero_state(n)
    kinds = 3 if n > 1 else 2
    count = GATES_PER_QUBIT_SQUARED * n * n if gates is None else gates
    for _ in range(count):
        kind = rng.integers(kinds)
        if kind == 0:
            tab.h(int(rng.integers(n)))
        elif kind == 1:
            tab.s(int(rng.integers(n)))
        else:
            a, b = rng.choice(n, size=2, replace=False)
            tab.cnot(int(a), int(b))
    tab.validate()
    return tab


# -- SWAP test -------------------------------------------------------------


def swap_observable_expectation(rho: DenseState, mu: Prefix | str) -> float:
    """``<U> = Tr[(rho (x) rho) U]`` for ``U = (P_mu (x) I)^{(x)2} SWAP_{n-k}``.

    Because ``U`` swaps only the trailing ``n - k`` qubits, the trace reduces to
    ``Tr[Y^2]`` with ``Y`` the partial trace of ``rho (P_mu (x) I)`` over the first
    ``k`` qubits.
    """
    mu = Prefix(mu)
    n, k = rho.n, len(mu)
    if k > n:
        raise ValueError(f"prefix {mu} longer than n = {n}")
    check_dense_size(n, MAX_BELL_QUBITS)
    a = rho.matrix
    if k:
        a = a @ np.kron(pauli_matrix(mu), np.eye(1 << (n - k)))
    da, db = 1 << k, 1 << (n - k)
    y = np.einsum("aiaj->ij", a.reshape(da, db, da, db))
    val = np.sum(y * y.T)
    if abs(val.imag) > 1e-10:
        raise ArithmeticError("SWAP-test expectation has a non-negligible imaginary part")
    return float(val.real)


def swap_test_zero_probability(rho: DenseState, mu: Prefix | str) -> float:
    """Probability that the ancilla of the Hadamard test reads 0."""
    return (1 + swap_observable_expectation(rho, mu)) / 2


def swap_test_expected_estimate(rho: DenseState, mu: Prefix | str) -> float:
    """Expectation of :func:`swap_test_estimate` under its exact Bernoulli law."""
    p0 = swap_test_zero_probability(rho, mu)
    return 2 ** (rho.n - len(Prefix(mu))) * (2 * p0 - 1)


def swap_test_estimate(rho: DenseState, mu: Prefix | str, M: int, seed=None) -> float:
    """Estimate ``K_mu`` from ``M`` simulated Hadamard-test shots."""
    mu = Prefix(mu)
    if M < 1:
        raise ValueError("M must be at least 1")
    p0 = min(max(swap_test_zero_probability(rho, mu), 0.0), 1.0)
    zeros = np.random.default_rng(seed).binomial(M, p0)
    return 2 ** (rho.n - len(mu)) * (2 * zeros / M - 1)
