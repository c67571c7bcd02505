"""Stabilizer states as generator tableaux over GF(2).

Each generator is a sign bit plus ``(x, z)`` bit rows; ``(1, 1)`` on a qubit
means ``Y``. Gate updates and row products follow Aaronson and Gottesman.
"""

from __future__ import annotations

import numpy as np

from .pauli_core import PauliString, check_dense_size, pauli_matrix

MAX_GROUP_QUBITS = 20

_CHARS = np.array(list("IXZY"))  # index x + 2 z


def _g(x1, z1, x2, z2):
    """Power of ``i`` picked up when multiplying single-qubit Paulis (vectorized)."""
    x1, z1, x2, z2 = (np.asarray(a, dtype=np.int64) for a in (x1, z1, x2, z2))
    return np.where(
        (x1 == 0) & (z1 == 0),
        0,
        np.where(
            (x1 == 1) & (z1 == 1),
            z2 - x2,
            np.where(x1 == 1, z2 * (2 * x2 - 1), x2 * (1 - 2 * z2)),
        ),
    )


def multiply(x1, z1, r1, x2, z2, r2):
    """Product of commuting signed Paulis along the last axis; returns ``(x, z, r)``."""
    phase = 2 * np.asarray(r1, np.int64) + 2 * np.asarray(r2, np.int64) + _g(x1, z1, x2, z2).sum(axis=-1)
    phase %= 4
    if np.any(phase % 2):
        raise ValueError("multiplied Paulis do not commute")
    return x1 ^ x2, z1 ^ z2, (phase // 2).astype(np.uint8)


def gf2_rank(mat: np.ndarray) -> int:
    m = np.array(mat, dtype=np.uint8) & 1
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = next((i for i in range(rank, rows) if m[i, c]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hit = m[:, c].astype(bool)
        hit[rank] = False
        m[hit] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


class StabilizerTableau:
    """``n`` stabilizer generators of an ``n``-qubit pure state.

    Gate methods update the tableau in place and return ``self``.
    """

    def __init__(self, x: np.ndarray, z: np.ndarray, r: np.ndarray, check: bool = True):
        self.x = np.array(x, dtype=np.uint8) & 1
        self.z = np.array(z, dtype=np.uint8) & 1
        self.r = np.array(r, dtype=np.uint8).ravel() & 1
        if check:
            self.validate()

    @property
    def n(self) -> int:
        return self.x.shape[1]

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerTableau":
        eye = np.eye(n, dtype=np.uint8)
        return cls(np.zeros((n, n), np.uint8), eye, np.zeros(n, np.uint8))

    @classmethod
    def from_strings(cls, gens: list[str]) -> "StabilizerTableau":
        """Parse generators such as ``["+XX", "-ZZ"]`` (sign optional)."""
        n = len(gens)
        x = np.zeros((n, n), np.uint8)
        z = np.zeros((n, n), np.uint8)
        r = np.zeros(n, np.uint8)
        for i, g in enumerate(gens):
            if g[0] in "+-":
                r[i] = g[0] == "-"
                g = g[1:]
            if len(g) != n:
                raise ValueError(f"generator {gens[i]!r} does not act on {n} qubits")
            for q, ch in enumerate(g.upper()):
                x[i, q] = ch in "XY"
                z[i, q] = ch in "ZY"
                if ch not in "IXYZ":
                    raise ValueError(f"bad Pauli symbol {ch!r} in {gens[i]!r}")
        return cls(x, z, r)

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.x.copy(), self.z.copy(), self.r.copy(), check=False)

    def validate(self) -> None:
        if self.x.ndim != 2 or self.x.shape[0] != self.x.shape[1] or self.z.shape != self.x.shape:
            raise ValueError("tableau needs n generators on n qubits")
        if self.r.shape != (self.n,):
            raise ValueError("tableau needs one sign bit per generator")
        xi, zi = self.x.astype(np.int64), self.z.astype(np.int64)
        if np.any((xi @ zi.T + zi @ xi.T) % 2):
            raise ValueError("stabilizer generators do not commute")
        if gf2_rank(np.hstack([self.x, self.z])) != self.n:
            raise ValueError("stabilizer generators are not independent")

    def stabilizers(self) -> list[str]:
        return [
            ("-" if s else "+") + "".join(_CHARS[xr + 2 * zr])
            for s, xr, zr in zip(self.r, self.x, self.z)
        ]

    def __repr__(self) -> str:
        return f"StabilizerTableau({self.stabilizers()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return (
            np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.r, other.r)
        )

    # -- Clifford gates ------------------------------------------------------

    def h(self, a: int) -> "StabilizerTableau":
        self.r ^= self.x[:, a] & self.z[:, a]
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()
        return self

    def s(self, a: int) -> "StabilizerTableau":
        self.r ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]
        return self

    def cnot(self, a: int, b: int) -> "StabilizerTableau":
        if a == b:
            raise ValueError("CNOT control and target must differ")
        x, z = self.x, self.z
        self.r ^= x[:, a] & z[:, b] & (x[:, b] ^ z[:, a] ^ 1)
        x[:, b] ^= x[:, a]
        z[:, a] ^= z[:, b]
        return self

    # -- derived objects -----------------------------------------------------

    def doubled(self) -> "StabilizerTableau":
        """Tableau of ``psi (x) psi`` on ``2n`` qubits (copy 2 on qubits ``n..2n-1``)."""
        n = self.n
        x = np.zeros((2 * n, 2 * n), np.uint8)
        z = np.zeros((2 * n, 2 * n), np.uint8)
        x[:n, :n] = x[n:, n:] = self.x
        z[:n, :n] = z[n:, n:] = self.z
        return StabilizerTableau(x, z, np.concatenate([self.r, self.r]), check=False)

    def group_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """All ``2^n`` group elements as ``(x, z, r)`` arrays, built by doubling."""
        check_dense_size(self.n, MAX_GROUP_QUBITS)
        gx = np.zeros((1, self.n), np.uint8)
        gz = np.zeros((1, self.n), np.uint8)
        gr = np.zeros(1, np.uint8)
        for i in range(self.n):
            px, pz, pr = multiply(gx, gz, gr, self.x[i], self.z[i], self.r[i])
            gx, gz, gr = np.vstack([gx, px]), np.vstack([gz, pz]), np.concatenate([gr, pr])
        return gx, gz, gr

    def to_dense(self) -> np.ndarray:
        """Density matrix as the product of projectors ``(I + g_i) / 2``."""
        check_dense_size(self.n)
        dim = 1 << self.n
        rho = np.eye(dim, dtype=complex) / dim
        for s, label in zip(self.r, (g[1:] for g in self.stabilizers())):
            proj = (np.eye(dim) + (-1) ** int(s) * pauli_matrix(label)) / 2
            rho = proj @ rho @ proj
        return rho / np.trace(rho).real

    def measurement_support(self) -> tuple[np.ndarray, np.ndarray]:
        """Affine support ``{x0 + span(basis)}`` of a computational-basis measurement.

        A stabilizer state measured in the Z basis gives a uniform distribution over
        the bit strings satisfying ``z . x = r`` for every Z-type stabilizer
        ``(-1)^r Z^z``; the Z-type subgroup comes from row-reducing the X block.
        """
        n = self.n
        x, z, r = self.x.copy(), self.z.copy(), self.r.copy()
        row = 0
        for c in range(n):
            pivot = next((i for i in range(row, n) if x[i, c]), None)
            if pivot is None:
                continue
            for arr in (x, z, r):
                arr[[row, pivot]] = arr[[pivot, row]]
            for i in range(n):
                if i != row and x[i, c]:
                    x[i], z[i], r[i] = multiply(x[i], z[i], r[i], x[row], z[row], r[row])
            row += 1
        # rows row..n-1 are Z-type; solve A bits = b over GF(2)
        a = z[row:].copy()
        b = r[row:].copy()
        pivots = []
        k = 0
        for c in range(n):
            p = next((i for i in range(k, len(a)) if a[i, c]), None)
            if p is None:
                continue
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
            for i in range(len(a)):
                if i != k and a[i, c]:
                    a[i] ^= a[k]
                    b[i] ^= b[k]
            pivots.append(c)
            k += 1
        x0 = np.zeros(n, np.uint8)
        for i, c in enumerate(pivots):
            x0[c] = b[i]
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((len(free), n), np.uint8)
        for j, f in enumerate(free):
            basis[j, f] = 1
            for i, c in enumerate(pivots):
                basis[j, c] = a[i, f]
        return x0, basis


def enumerate_group(tab: StabilizerTableau) -> set[tuple[int, PauliString]]:
    """The stabilizer group as ``{(sign, PauliString)}``; always ``2^n`` elements."""
    gx, gz, gr = tab.group_arrays()
    labels = _CHARS[gx + 2 * gz]
    return {(-1 if s else 1, PauliString("".join(row))) for s, row in zip(gr, labels)}
