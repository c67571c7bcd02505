"""Simulation campaigns over grids of qubit counts and sample sizes.

``singleton-p1`` runs the threshold search on ``(I^n + X^n) / 2^n`` and scores a
repetition 1 when ``X^n`` is reported. ``stabilizer-p2`` draws one random
stabilizer state per ``(n, M)`` cell, asks for the top ``t`` (default ``2^n``)
strings and scores the overlap with the true stabilizer group.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import fmean

import numpy as np

from .samplers import random_stabilizer, sample_pauli_singleton, sample_stabilizer
from .search import DEFAULT_BUDGET, find_above_threshold, find_top_t, quality_score
from .tableau import enumerate_group

KINDS = ("singleton-p1", "stabilizer-p2")
CSV_HEADER = ("n", "M", "rep", "success_or_quality", "nodes_expanded", "wall_ms")

DEFAULT_N = {"singleton-p1": tuple(range(2, 9)), "stabilizer-p2": tuple(range(2, 7))}
DEFAULT_M = tuple(2**k for k in (8, 10, 12, 14, 16))
DEFAULT_REPS = {"singleton-p1": 100, "stabilizer-p2": 50}


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n_values: tuple[int, ...]
    m_values: tuple[int, ...] = DEFAULT_M
    repetitions: int = 1
    epsilon: float = 0.5
    t: int | None = None  # None means 2^n
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    timing: bool = False

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.n_values or min(self.n_values) < 1:
            raise ValueError("qubit counts must be at least 1")
        if not self.m_values or min(self.m_values) < 1:
            raise ValueError("sample sizes must be at least 1")
        if self.kind == "singleton-p1" and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.kind == "stabilizer-p2" and self.t is not None and self.t < 1:
            raise ValueError("t must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    def target(self, n: int) -> int:
        return 2**n if self.t is None else self.t


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    M: int
    rep: int | str
    score: float
    nodes_expanded: float
    wall_ms: float


def derived_seed(seed: int, *key: int) -> int:
    """Independent 64-bit seed for a grid cell, stable across platforms."""
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])


_STATE_TAG, _SAMPLE_TAG = 0, 1


def _run_one(cfg: ExperimentConfig, n: int, m: int, rep: int, state) -> ExperimentRow:
    seed = derived_seed(cfg.seed, _SAMPLE_TAG, n, m, rep)
    start = time.perf_counter()
    if cfg.kind == "singleton-p1":
        samples = sample_pauli_singleton(n, m, seed)
        result = find_above_threshold(samples, cfg.epsilon, budget=cfg.budget)
        score = 1.0 if "X" * n in result.labels() else 0.0
    else:
        tab, truth = state
        samples = sample_stabilizer(tab, m, seed)
        result = find_top_t(samples, cfg.target(n), budget=cfg.budget)
        score = quality_score(truth, result.labels(), n)
    wall = (time.perf_counter() - start) * 1000 if cfg.timing else 0.0
    return ExperimentRow(n, m, rep, score, result.stats.nodes_expanded, wall)


def _cell_state(cfg: ExperimentConfig, n: int, m: int):
    """The stabilizer state shared by all repetitions of a cell, with its support."""
    if cfg.kind != "stabilizer-p2":
        return None
    tab = random_stabilizer(n, derived_seed(cfg.seed, _STATE_TAG, n, m))
    return tab, frozenset(str(p) for _, p in enumerate_group(tab))


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list[ExperimentRow]:
    """One row per ``(n, M, repetition)`` in grid order; identical for any ``jobs``."""
    cfg.validate()
    tasks = []
    for n in cfg.n_values:
        for m in cfg.m_values:
            state = _cell_state(cfg, n, m)
            tasks.extend((cfg, n, m, rep, state) for rep in range(cfg.repetitions))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, *zip(*tasks), chunksize=max(1, len(tasks) // (8 * jobs))))
    return [_run_one(*task) for task in tasks]


def aggregate(rows: list[ExperimentRow]) -> list[ExperimentRow]:
    """Per-``(n, M)`` means, in first-appearance order, with ``rep = "mean"``."""
    cells: dict[tuple[int, int], list[ExperimentRow]] = {}
    for row in rows:
        cells.setdefault((row.n, row.M), []).append(row)
    return [
        ExperimentRow(
            n, m, "mean",
            fmean(r.score for r in group),
            fmean(r.nodes_expanded for r in group),
            fmean(r.wall_ms for r in group),
        )
        for (n, m), group in cells.items()
    ]


def _num(x: float) -> str:
    return repr(int(x)) if float(x).is_integer() else f"{x:.10g}"


def format_csv(rows: list[ExperimentRow], with_means: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows + (aggregate(rows) if with_means else []):
        writer.writerow(
            [row.n, row.M, row.rep, _num(row.score), _num(row.nodes_expanded), f"{row.wall_ms:.3f}"]
        )
    return buf.getvalue()


def read_csv(text: str) -> list[ExperimentRow]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for rec in reader:
        rep = rec["rep"] if rec["rep"] == "mean" else int(rec["rep"])
        out.append(
            ExperimentRow(
                int(rec["n"]), int(rec["M"]), rep, float(rec["success_or_quality"]),
                float(rec["nodes_expanded"]), float(rec["wall_ms"]),
            )
        )
    return out


_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def render_svg(rows: list[ExperimentRow], title: str = "") -> str:
    """Two panels (score, nodes expanded) vs log2 M, one polyline per n."""
    means = [r for r in rows if r.rep == "mean"] or aggregate(rows)
    ns = sorted({r.n for r in means})
    logm = sorted({float(np.log2(r.M)) for r in means})
    w, h, pad = 360, 260, 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * w}" height="{h + 30}" '
        f'font-family="sans-serif" font-size="11">',
        f'<text x="{w}" y="15" text-anchor="middle">{title}</text>',
    ]
    for panel, (label, get, log_y) in enumerate(
        [("success / quality", lambda r: r.score, False), ("nodes expanded", lambda r: r.nodes_expanded, True)]
    ):
        ox = panel * w
        vals = [get(r) for r in means]
        tr = (lambda v: np.log10(max(v, 1e-9))) if log_y else (lambda v: v)
        lo = min(tr(v) for v in vals) if log_y else 0.0
        hi = max(tr(v) for v in vals)
        hi = hi if hi > lo else lo + 1
        xlo, xhi = logm[0], logm[-1] if logm[-1] > logm[0] else logm[0] + 1

        def px(x):
            return ox + pad + (x - xlo) / (xhi - xlo) * (w - 2 * pad)

        def py(y):
            return 30 + h - pad - (tr(y) - lo) / (hi - lo) * (h - 2 * pad)

        parts.append(
            f'<rect x="{ox + pad}" y="{30 + pad}" width="{w - 2 * pad}" height="{h - 2 * pad}" '
            f'fill="none" stroke="#888"/>'
        )
        parts.append(f'<text x="{ox + w / 2}" y="{30 + pad - 6}" text-anchor="middle">{label}</text>')
        parts.append(f'<text x="{ox + w / 2}" y="{30 + h - 8}" text-anchor="middle">log2 M</text>')
        for i, n in enumerate(ns):
            pts = sorted((np.log2(r.M), get(r)) for r in means if r.n == n)
            coords = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in pts)
            color = _COLORS[i % len(_COLORS)]
            parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            parts.append(f'<text x="{ox + w - pad + 4}" y="{30 + pad + 12 * (i + 1)}" fill="{color}">n={n}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
