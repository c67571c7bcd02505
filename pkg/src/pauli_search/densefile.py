"""Plain-text density matrix files.

Line 1 holds ``n``; each of the next ``2^n`` lines holds one matrix row as
``2^(n+1)`` reals, alternating real and imaginary parts.
"""

from __future__ import annotations

import os

import numpy as np

from .pauli_core import MAX_DENSE_QUBITS, DenseState, SizeGuardError


class DenseFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_dense(text: str) -> DenseState:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise DenseFormatError("missing qubit count", 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise DenseFormatError(f"qubit count must be an integer, got {lines[0]!r}", 1) from None
    if n < 1:
        raise DenseFormatError("qubit count must be at least 1", 1)
    if n > MAX_DENSE_QUBITS:
        raise SizeGuardError(f"dense states limited to n <= {MAX_DENSE_QUBITS}, got n = {n}")
    dim = 1 << n
    if len(lines) - 1 != dim:
        raise DenseFormatError(f"expected {dim} matrix rows, found {len(lines) - 1}", min(len(lines), dim + 1) + 1)
    m = np.empty((dim, dim), dtype=complex)
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != 2 * dim:
            raise DenseFormatError(f"expected {2 * dim} numbers, got {len(parts)}", i + 2)
        try:
            vals = np.array([float(p) for p in parts])
        except ValueError as exc:
            raise DenseFormatError(str(exc), i + 2) from None
        m[i] = vals[0::2] + 1j * vals[1::2]
    return DenseState(m)


def format_dense(rho: DenseState) -> str:
    out = [str(rho.n)]
    for row in rho.matrix:
        out.append(" ".join(f"{v.real!r} {v.imag!r}" for v in row.tolist()))
    return "\n".join(out) + "\n"


def read_dense(path: str | os.PathLike) -> DenseState:
    with open(path, encoding="utf-8") as fh:
        return parse_dense(fh.read())


def write_dense(rho: DenseState, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_dense(rho))
