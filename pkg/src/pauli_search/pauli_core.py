"""Pauli strings, prefixes and exact dense density matrices.

A Pauli string is written as text over ``IXYZ``; the symbol at position 0 acts
on the leftmost tensor factor, so a prefix constrains the first qubits.
"""

from __future__ import annotations

from enum import IntEnum
from functools import reduce
from typing import Iterable

import numpy as np

MAX_DENSE_QUBITS = 8

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_TOL = 1e-10


class SizeGuardError(ValueError):
    """Raised when a dense computation would exceed its qubit ceiling."""


class PauliAxis(IntEnum):
    I = 0
    X = 1
    Y = 2
    Z = 3

    @classmethod
    def parse(cls, ch: str) -> "PauliAxis":
        try:
            return cls[ch.upper()]
        except KeyError:
            raise ValueError(f"not a Pauli symbol: {ch!r}") from None


AXES = tuple(PauliAxis)

_I2 = np.eye(2, dtype=complex)
_X2 = np.array([[0, 1], [1, 0]], dtype=complex)
_Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE_QUBIT = (_I2, _X2, _Y2, _Z2)


class Prefix(tuple):
    """A word over ``{I, X, Y, Z}`` naming the subtree of strings that start with it.

    Behaves as a tuple of :class:`PauliAxis`, so prefixes order lexicographically
    with ``I < X < Y < Z`` and a proper prefix sorts before its extensions.
    """

    def __new__(cls, symbols: str | Iterable = ()):
        if isinstance(symbols, str):
            items = tuple(PauliAxis.parse(c) for c in symbols)
        else:
            items = tuple(PauliAxis(s) for s in symbols)
        return super().__new__(cls, items)

    def child(self, symbol: PauliAxis | int) -> "Prefix":
        return Prefix(tuple(self) + (PauliAxis(symbol),))

    def __str__(self) -> str:
        return "".join(s.name for s in self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class PauliString(Prefix):
    """A full-length Pauli index; must hold at least one symbol."""

    def __new__(cls, symbols: str | Iterable):
        obj = super().__new__(cls, symbols)
        if len(obj) < 1:
            raise ValueError("a Pauli string needs at least one symbol")
        return obj

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls("I" * n)


def check_dense_size(n: int, limit: int = MAX_DENSE_QUBITS) -> None:
    if n > limit:
        raise SizeGuardError(f"dense computation limited to n <= {limit}, got n = {n}")


def pauli_matrix(nu: Prefix | str) -> np.ndarray:
    """Return the ``2^n x 2^n`` matrix of ``P_nu`` (first symbol = leftmost factor)."""
    nu = PauliString(nu)
    check_dense_size(len(nu))
    return reduce(np.kron, (SINGLE_QUBIT[s] for s in nu))


class DenseState:
    """Immutable n-qubit density matrix.

    Construction validates hermiticity, unit trace and positivity; use
    :meth:`unchecked` to skip validation.
    """

    __slots__ = ("_matrix", "n")

    def __init__(self, matrix: np.ndarray):
        m = np.array(matrix, dtype=complex)
        self._setup(m)
        self._validate()

    @classmethod
    def unchecked(cls, matrix: np.ndarray) -> "DenseState":
        obj = cls.__new__(cls)
        obj._setup(np.array(matrix, dtype=complex))
        return obj

    def _setup(self, m: np.ndarray) -> None:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        dim = m.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 1 << n != dim:
            raise ValueError(f"dimension must be a power of two >= 2, got {dim}")
        check_dense_size(n)
        m.setflags(write=False)
        self._matrix = m
        self.n = n

    def _validate(self) -> None:
        m = self._matrix
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, expected 1")
        lo = np.linalg.eigvalsh(m).min()
        if lo < -PSD_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return 1 << self.n

    def __repr__(self) -> str:
        return f"DenseState(n={self.n})"

    # -- common states -------------------------------------------------------

    @classmethod
    def maximally_mixed(cls, n: int) -> "DenseState":
        return cls(np.eye(1 << n, dtype=complex) / (1 << n))

    @classmethod
    def from_statevector(cls, psi: np.ndarray) -> "DenseState":
        psi = np.asarray(psi, dtype=complex).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def basis_state(cls, bits: str) -> "DenseState":
        psi = np.zeros(1 << len(bits), dtype=complex)
        psi[int(bits, 2)] = 1.0
        return cls.from_statevector(psi)

    @classmethod
    def pauli_singleton(cls, n: int) -> "DenseState":
        """The state ``(I^n + X^n) / 2^n``."""
        check_dense_size(n)
        return cls((pauli_matrix("I" * n) + pauli_matrix("X" * n)) / (1 << n))

    @classmethod
    def from_pauli_terms(cls, terms: dict[str, float]) -> "DenseState":
        """Build ``(1/2^n) sum_nu c_nu P_nu`` from a ``{label: c_nu}`` mapping."""
        labels = list(terms)
        n = len(labels[0])
        m = sum(c * pauli_matrix(label) for label, c in terms.items())
        return cls(m / (1 << n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, rank: int | None = None) -> "DenseState":
        """Random mixed state ``G G^dag / Tr`` with Ginibre ``G`` of the given rank."""
        dim = 1 << n
        rank = dim if rank is None else rank
        g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
        m = g @ g.conj().T
        m = (m + m.conj().T) / 2
        return cls(m / np.trace(m).real)


def _real(value: complex, what: str) -> float:
    if abs(value.imag) >= IMAG_TOL:
        raise ArithmeticError(f"{what} has imaginary part {value.imag:.3e}")
    return float(value.real)


def coefficient(rho: DenseState, nu: Prefix | str) -> float:
    """Return ``c_nu = Tr[rho P_nu]``."""
    nu = PauliString(nu)
    if len(nu) != rho.n:
        raise ValueError(f"Pauli string {nu} has length {len(nu)}, state has n = {rho.n}")
    # Tr[A B] = sum_ij A_ij B_ji
    return _real(np.sum(rho.matrix * pauli_matrix(nu).T), f"Tr[rho P_{nu}]")


def purity(rho: DenseState) -> float:
    """Return ``Tr[rho^2]``."""
    m = rho.matrix
    return _real(np.sum(m * m.T), "Tr[rho^2]")


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
# basis[a, c, r] = (P_a)[c, r] so that sum rho[r, c] basis[a, c, r] = Tr[rho P_a]
_BASIS = np.stack(SINGLE_QUBIT)


def pauli_coefficients(rho: DenseState) -> np.ndarray:
    """All ``4^n`` coefficients at once, as a real array of shape ``(4,) * n``.

    Entry ``[a_0, ..., a_{n-1}]`` is ``c_nu`` for ``nu = a_0 ... a_{n-1}`` with
    axes coded ``I=0, X=1, Y=2, Z=3``.
    """
    n = rho.n
    rows = _LETTERS[:n]
    cols = _LETTERS[n : 2 * n]
    outs = _LETTERS[2 * n : 3 * n]
    subs = [rows + cols] + [outs[q] + cols[q] + rows[q] for q in range(n)]
    expr = ",".join(subs) + "->" + outs
    t = rho.matrix.reshape((2,) * (2 * n))
    c = np.einsum(expr, t, *([_BASIS] * n), optimize=True)
    if np.max(np.abs(c.imag), initial=0.0) >= IMAG_TOL:
        raise ArithmeticError("Pauli coefficients have a non-negligible imaginary part")
    return np.ascontiguousarray(c.real)
