"""Node-weight estimates from one shared set of Bell samples.

For a prefix ``mu`` of length ``k`` and run ``j`` the sign vector holds
``s_j(mu) * (-1)^(A_kj)``, where ``A_kj`` counts Psi- outcomes at positions
``k..n-1``; the node estimate is ``2^(n-k) / M`` times its sum.

Sign vectors are stored as packed bits (1 = negative). A child differs from its
parent by an XOR with a per-(position, symbol) mask, and sums come from a
popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bell import SIGNS, BellPairOutcome, SampleSet
from .pauli_core import PauliAxis, Prefix


@dataclass(frozen=True, eq=False)
class SignVector:
    prefix: Prefix
    packed: np.ndarray  # packed negative flags, zero padded
    M: int

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    @property
    def negatives(self) -> int:
        return int(np.bitwise_count(self.packed).sum())

    @property
    def total(self) -> int:
        """``sum_j sv_j``."""
        return self.M - 2 * self.negatives

    @property
    def values(self) -> np.ndarray:
        bits = np.unpackbits(self.packed, count=self.M)
        return (1 - 2 * bits.astype(np.int8)).astype(np.int8)


@dataclass(frozen=True)
class NodeEstimate:
    """``K_hat_mu``; ``weighted_sum = 2^(n-|mu|) * sum_j sv_j`` is kept exactly."""

    prefix: Prefix
    weighted_sum: int
    M: int

    @property
    def value(self) -> float:
        return self.weighted_sum / self.M

    @property
    def exact(self) -> Fraction:
        return Fraction(self.weighted_sum, self.M)

    def __float__(self) -> float:
        return self.value


def root_sign_vector(samples: SampleSet) -> SignVector:
    """Component ``j`` is ``(-1)^(number of Psi- outcomes in run j)``."""
    if samples.M < 1:
        raise ValueError("cannot estimate from an empty sample set")
    return SignVector(Prefix(), samples.packed_root, samples.M)


def child_sign_vector(parent: SignVector, samples: SampleSet, symbol: PauliAxis | int) -> SignVector:
    pos = parent.prefix_len
    if pos >= samples.n:
        raise ValueError(f"prefix {parent.prefix} is already full length")
    symbol = PauliAxis(symbol)
    packed = parent.packed ^ samples.packed_flips[pos, symbol]
    return SignVector(parent.prefix.child(symbol), packed, parent.M)


def sign_vector_for(samples: SampleSet, mu: Prefix | str) -> SignVector:
    """Walk from the root to ``mu`` by repeated child derivation."""
    sv = root_sign_vector(samples)
    for s in Prefix(mu):
        sv = child_sign_vector(sv, samples, s)
    return sv


def direct_sign_values(samples: SampleSet, mu: Prefix | str) -> np.ndarray:
    """``s_j(mu) (-1)^(A_|mu|,j)`` computed from scratch as an int8 array of length M."""
    mu = Prefix(mu)
    k = len(mu)
    out = np.ones(samples.M, dtype=np.int64)
    for pos, sym in enumerate(mu):
        out *= SIGNS[samples.outcomes[:, pos], sym]
    tail_psi = np.sum(samples.outcomes[:, k:] == BellPairOutcome.PSI_MINUS, axis=1)
    out *= 1 - 2 * (tail_psi % 2)
    return out.astype(np.int8)


def estimate(sv: SignVector, samples: SampleSet) -> NodeEstimate:
    """``K_hat_mu = 2^(n - |mu|) / M * sum_j sv_j``."""
    scale = 1 << (samples.n - sv.prefix_len)
    return NodeEstimate(sv.prefix, scale * sv.total, sv.M)


def estimate_prefix(samples: SampleSet, mu: Prefix | str) -> NodeEstimate:
    return estimate(sign_vector_for(samples, mu), samples)


def required_samples(epsilon: float, delta: float, n: int) -> int:
    """Hoeffding budget ``ceil(2 eps^-2 ln(2 * 4^(n+1) / delta))``.

    Two-sided Hoeffding for +-1 variables with a per-node failure probability of
    ``delta / 4^(n+1)``, union-bounded over the tree.
    """
    if not 0 < epsilon <= 2:
        raise ValueError(f"epsilon must lie in (0, 2], got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return math.ceil(2 * epsilon**-2 * math.log(2 * 4 ** (n + 1) / delta))
