"""Best-first traversal of the Pauli prefix tree.

The frontier is a max-heap on node weight. Ties go to the lexicographically
smaller prefix (``I < X < Y < Z``), which also puts a shorter prefix ahead of
its own extensions.

Threshold tests are strict: a string is reported by :func:`find_above_threshold`
only when its weight is *greater* than ``epsilon**2``, so coefficients with
``|c| == epsilon`` exactly are excluded.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .bell import SampleSet
from .estimator import child_sign_vector, estimate, root_sign_vector
from .oracle import node_values_exact
from .pauli_core import AXES, DenseState, PauliString, Prefix

DEFAULT_BUDGET = 10**6

# Exact weights are rounded before comparison so float noise cannot break ties.
EXACT_DIGITS = 12


@dataclass(frozen=True, eq=False)
class FrontierNode:
    prefix: Prefix
    value: float
    key: object  # totally ordered priority; larger is better
    handle: object = None

    def sort_key(self):
        return (-self.key, self.prefix)


class SampledSource:
    """Node weights estimated from one shared :class:`SampleSet`.

    Priorities are the exact integers ``2^(n-k) * sum_j sv_j``; all nodes share the
    same ``M`` so these order exactly like the estimates.
    """

    def __init__(self, samples: SampleSet):
        if samples.M < 1:
            raise ValueError("sampled search needs at least one run")
        self.samples = samples
        self.n = samples.n

    def _node(self, sv) -> FrontierNode:
        est = estimate(sv, self.samples)
        return FrontierNode(sv.prefix, est.value, est.weighted_sum, sv)

    def root(self) -> FrontierNode:
        return self._node(root_sign_vector(self.samples))

    def children(self, node: FrontierNode) -> list[FrontierNode]:
        return [self._node(child_sign_vector(node.handle, self.samples, s)) for s in AXES]

    def threshold_key(self, epsilon: float):
        return Fraction(epsilon) ** 2 * self.samples.M


class ExactSource:
    """Exact node weights of a dense state (no sampling noise)."""

    def __init__(self, rho: DenseState):
        self.rho = rho
        self.n = rho.n
        self._values = node_values_exact(rho)

    def _node(self, prefix: Prefix) -> FrontierNode:
        v = self._values[prefix]
        return FrontierNode(prefix, v, round(v, EXACT_DIGITS))

    def root(self) -> FrontierNode:
        return self._node(Prefix())

    def children(self, node: FrontierNode) -> list[FrontierNode]:
        return [self._node(node.prefix.child(s)) for s in AXES]

    def threshold_key(self, epsilon: float):
        return round(epsilon**2, EXACT_DIGITS)


def as_source(source) -> SampledSource | ExactSource:
    if isinstance(source, (SampledSource, ExactSource)):
        return source
    if isinstance(source, SampleSet):
        return SampledSource(source)
    if isinstance(source, DenseState):
        return ExactSource(source)
    raise TypeError(f"cannot search over {type(source).__name__}")


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    leaves_emitted: int = 0
    frontier_peak: int = 0
    termination: str = ""


@dataclass
class SearchResult:
    found: list[tuple[PauliString, float]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def strings(self) -> list[PauliString]:
        return [p for p, _ in self.found]

    def labels(self) -> set[str]:
        return {str(p) for p, _ in self.found}


Observer = Callable[[FrontierNode, list], None]


class _Frontier:
    def __init__(self):
        self.heap: list = []

    def push(self, node: FrontierNode) -> None:
        heapq.heappush(self.heap, (node.sort_key(), node))

    def pop(self) -> FrontierNode:
        return heapq.heappop(self.heap)[1]

    def peek(self) -> FrontierNode:
        return self.heap[0][1]

    def nodes(self) -> list[FrontierNode]:
        return [entry[1] for entry in self.heap]

    def __len__(self) -> int:
        return len(self.heap)


def _emit(result: SearchResult, node: FrontierNode) -> None:
    result.found.append((PauliString(node.prefix), max(node.value, 0.0)))
    result.stats.leaves_emitted += 1


def find_top_t(source, t: int, budget: int = DEFAULT_BUDGET, observer: Observer | None = None) -> SearchResult:
    """Pop the heaviest frontier node until ``t`` leaves have been emitted.

    A popped leaf is emitted; a popped internal node is replaced by its four
    children. Stops with termination ``"target_reached"``, ``"frontier_exhausted"``
    or ``"budget_exhausted"``. Every pop counts as one expanded node.
    """
    if t < 1 or budget < 1:
        raise ValueError("t and budget must be at least 1")
    src = as_source(source)
    result = SearchResult()
    stats = result.stats
    frontier = _Frontier()
    frontier.push(src.root())
    stats.frontier_peak = 1
    while True:
        if not frontier:
            stats.termination = "frontier_exhausted"
            break
        if stats.nodes_expanded >= budget:
            stats.termination = "budget_exhausted"
            break
        if observer is not None:
            observer(frontier.peek(), frontier.nodes())
        node = frontier.pop()
        stats.nodes_expanded += 1
        if len(node.prefix) == src.n:
            _emit(result, node)
            if stats.leaves_emitted >= t:
                stats.termination = "target_reached"
                break
        else:
            for child in src.children(node):
                frontier.push(child)
            stats.frontier_peak = max(stats.frontier_peak, len(frontier))
    return result


def find_above_threshold(
    source, epsilon: float, budget: int = DEFAULT_BUDGET, observer: Observer | None = None
) -> SearchResult:
    """Expand every node, and emit every leaf, whose weight exceeds ``epsilon**2``.

    Nodes are processed heaviest first, so the search ends as soon as the best
    remaining node is at or below the threshold (termination ``"below_threshold"``).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    src = as_source(source)
    thr = src.threshold_key(epsilon)
    result = SearchResult()
    stats = result.stats
    frontier = _Frontier()
    frontier.push(src.root())
    stats.frontier_peak = 1
    while True:
        if not frontier:
            stats.termination = "frontier_exhausted"
            break
        if not frontier.peek().key > thr:
            stats.termination = "below_threshold"
            break
        if stats.nodes_expanded >= budget:
            stats.termination = "budget_exhausted"
            break
        if observer is not None:
            observer(frontier.peek(), frontier.nodes())
        node = frontier.pop()
        stats.nodes_expanded += 1
        if len(node.prefix) == src.n:
            _emit(result, node)
        else:
            for child in src.children(node):
                frontier.push(child)
            stats.frontier_peak = max(stats.frontier_peak, len(frontier))
    return result


def quality_score(truth: Iterable, recovered: Iterable, n: int) -> float:
    """``1 - |truth symmetric-difference recovered| / 2^n``."""
    a = {str(p) for p in truth}
    b = {str(p) for p in recovered}
    return 1 - len(a ^ b) / 2**n
