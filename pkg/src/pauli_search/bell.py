"""Bell-basis outcomes, sample sets and the plain-text sample file format.

A sample file has a header line ``n M`` followed by ``M`` lines of ``n``
characters from ``0123`` (Phi+, Phi-, Psi+, Psi- at pair positions
``0..n-1``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .pauli_core import PauliAxis


class BellPairOutcome(IntEnum):
    PHI_PLUS = 0
    PHI_MINUS = 1
    PSI_PLUS = 2
    PSI_MINUS = 3

    @property
    def signs(self) -> tuple[int, int, int]:
        """Eigenvalues ``(s_X, s_Y, s_Z)`` of ``XX``, ``YY``, ``ZZ`` on this Bell state."""
        row = SIGNS[self]
        return int(row[PauliAxis.X]), int(row[PauliAxis.Y]), int(row[PauliAxis.Z])


# SIGNS[tag, axis]: eigenvalue of (axis (x) axis) on the Bell state `tag`, axes I, X, Y, Z.
SIGNS = np.array(
    [
        [+1, +1, -1, +1],  # Phi+
        [+1, -1, +1, +1],  # Phi-
        [+1, +1, +1, -1],  # Psi+
        [+1, -1, -1, -1],  # Psi-
    ],
    dtype=np.int8,
)
SIGNS.setflags(write=False)

# Child derivation flips a run's sign when s(tag, symbol) = -1 XOR tag is Psi-.
FLIPS = (SIGNS < 0) ^ (np.arange(4) == BellPairOutcome.PSI_MINUS)[:, None]
FLIPS.setflags(write=False)

BellRun = tuple  # tuple[BellPairOutcome, ...] of length n


class SampleFormatError(ValueError):
    """Malformed sample file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, eq=False)
class SampleSet:
    """``M`` Bell-sampling runs on ``n`` qubit pairs.

    ``outcomes`` is a read-only ``(M, n)`` uint8 array of :class:`BellPairOutcome`
    codes; row ``j`` is run ``j``.
    """

    n: int
    outcomes: np.ndarray
    source: str = "unknown"
    seed: object = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a sample set needs n >= 1")
        arr = np.array(self.outcomes, dtype=np.uint8)
        if arr.size == 0:
            arr = arr.reshape(0, self.n)
        if arr.ndim != 2 or arr.shape[1] != self.n:
            raise ValueError(f"outcomes must have shape (M, {self.n}), got {arr.shape}")
        if arr.size and arr.max() > 3:
            raise ValueError("outcome codes must lie in 0..3")
        arr.setflags(write=False)
        object.__setattr__(self, "outcomes", arr)

    @property
    def M(self) -> int:
        return self.outcomes.shape[0]

    def __len__(self) -> int:
        return self.M

    def run(self, j: int) -> BellRun:
        return tuple(BellPairOutcome(int(c)) for c in self.outcomes[j])

    @property
    def runs(self) -> Iterator[BellRun]:
        return (self.run(j) for j in range(self.M))

    @classmethod
    def from_runs(cls, runs: Sequence[Sequence[int]], n: int | None = None, **meta) -> "SampleSet":
        arr = np.array([[int(c) for c in r] for r in runs], dtype=np.uint8)
        if n is None:
            if arr.size == 0:
                raise ValueError("cannot infer n from zero runs")
            n = arr.shape[1]
        return cls(n, arr.reshape(len(runs), n), **meta)

    # Packed per-run bits consumed by the estimator; computed once per sample set.

    @cached_property
    def packed_flips(self) -> np.ndarray:
        """``(n, 4, ceil(M/8))`` packed masks of runs whose sign flips when
        extending a prefix ending at position ``pos`` by ``symbol``."""
        flips = FLIPS[self.outcomes]  # (M, n, 4)
        return np.packbits(np.transpose(flips, (1, 2, 0)), axis=-1)

    @cached_property
    def packed_root(self) -> np.ndarray:
        """Packed bits of runs with an odd number of Psi- outcomes."""
        odd = np.bitwise_xor.reduce(self.outcomes == BellPairOutcome.PSI_MINUS, axis=1)
        return np.packbits(odd)


def format_samples(samples: SampleSet) -> str:
    lines = [f"{samples.n} {samples.M}"]
    digits = (samples.outcomes + ord("0")).view("S1") if samples.M else None
    for j in range(samples.M):
        lines.append(digits[j].tobytes().decode("ascii"))
    return "\n".join(lines) + "\n"


def write_samples(samples: SampleSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_samples(samples))


def parse_samples(text: str, source: str = "file") -> SampleSet:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SampleFormatError("missing header 'n M'", 1)
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isascii() and h.isdigit() for h in header):
        raise SampleFormatError(f"header must be 'n M', got {lines[0]!r}", 1)
    n, m = int(header[0]), int(header[1])
    if n < 1:
        raise SampleFormatError("n must be at least 1", 1, 1)
    if len(lines) - 1 > m:
        raise SampleFormatError(f"header declares {m} runs, found extra line", m + 2)
    if len(lines) - 1 < m:
        raise SampleFormatError(f"header declares {m} runs, file ends after {len(lines) - 1}", len(lines) + 1)
    out = np.empty((m, n), dtype=np.uint8)
    for j, line in enumerate(lines[1:]):
        lineno = j + 2
        if len(line) != n:
            raise SampleFormatError(f"expected {n} characters, got {len(line)}", lineno)
        if line.strip("0123"):
            col = next(i for i, ch in enumerate(line) if ch not in "0123")
            raise SampleFormatError(f"invalid outcome {line[col]!r}", lineno, col + 1)
        out[j] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")
    return SampleSet(n, out, source=source)


def read_samples(path: str | os.PathLike) -> SampleSet:
    # latin-1 never fails to decode, so bad bytes surface as positioned format errors
    with open(path, encoding="latin-1", newline="") as fh:
        text = fh.read()
    return parse_samples(text, source=f"file:{os.fspath(path)}")
