import itertools

import numpy as np
import pytest

from pauli_search.bell import SampleSet
from pauli_search.oracle import node_values_exact
from pauli_search.pauli_core import DenseState, Prefix, pauli_coefficients, purity
from pauli_search.samplers import random_stabilizer, sample_pauli_singleton, sample_stabilizer
from pauli_search.search import (
    ExactSource,
    SampledSource,
    find_above_threshold,
    find_top_t,
    quality_score,
)
from pauli_search.tableau import enumerate_group


def sparse_state(n: int, rng, terms: int) -> DenseState:
    """``(I + sum a_k P_k) / 2^n`` with ``sum |a_k| <= 1`` so the matrix stays PSD."""
    terms = min(terms, 4**n - 1)
    labels = set()
    while len(labels) < terms:
        label = "".join(rng.choice(list("IXYZ"), n))
        if label != "I" * n:
            labels.add(label)
    weights = rng.dirichlet(np.ones(terms)) * rng.uniform(0.3, 1.0)
    signs = rng.choice([-1, 1], terms)
    return DenseState.from_pauli_terms({"I" * n: 1.0, **dict(zip(labels, signs * weights))})


class TestMaximallyMixed:
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_top_one(self, n):
        r = find_top_t(DenseState.maximally_mixed(n), 1)
        assert r.labels() == {"I" * n}
        assert r.stats.nodes_expanded == n + 1
        assert r.stats.termination == "target_reached"

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_threshold(self, n):
        r = find_above_threshold(DenseState.maximally_mixed(n), 0.5)
        assert [str(p) for p in r.strings] == ["I" * n]
        assert r.stats.nodes_expanded == n + 1


class TestExactResults:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_singleton_top_two(self, n):
        assert find_top_t(DenseState.pauli_singleton(n), 2).labels() == {"I" * n, "X" * n}

    @pytest.mark.parametrize("n", [1, 3])
    def test_singleton_threshold(self, n):
        r = find_above_threshold(DenseState.pauli_singleton(n), 0.5)
        assert r.labels() == {"I" * n, "X" * n}

    @pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (3, 2), (4, 3)])
    def test_stabilizer_group_recovered(self, n, seed):
        tab = random_stabilizer(n, seed=seed)
        truth = {str(p) for _, p in enumerate_group(tab)}
        r = find_top_t(DenseState(tab.to_dense()), 2**n)
        assert r.labels() == truth

    def test_epsilon_one_finds_nothing_above(self, states):
        for rho in states.values():
            assert find_above_threshold(rho, 1.0).found == []
            assert find_above_threshold(rho, 0.999).labels() <= {"I" * rho.n} | {
                str(Prefix(i)) for i in itertools.product(range(4), repeat=rho.n)
                if abs(pauli_coefficients(rho)[i]) > 0.999
            }

    def test_threshold_is_strict(self):
        rho = DenseState.from_pauli_terms({"I": 1.0, "Z": 0.5})
        assert find_above_threshold(rho, 0.5).labels() == {"I"}
        assert find_above_threshold(rho, 0.49).labels() == {"I", "Z"}

    def test_threshold_output_is_exact_set(self, states):
        for eps in (0.1, 0.3, 0.5):
            for rho in states.values():
                c = pauli_coefficients(rho)
                expected = {
                    str(Prefix(i)) for i in itertools.product(range(4), repeat=rho.n) if abs(c[i]) > eps + 1e-9
                }
                assert find_above_threshold(rho, eps).labels() == expected

    def test_top_t_descending_distinct(self):
        rng = np.random.default_rng(4)
        rho = sparse_state(3, rng, 6)
        c2 = pauli_coefficients(rho) ** 2
        order = sorted(
            (str(Prefix(i)) for i in itertools.product(range(4), repeat=3)), key=lambda s: -c2[tuple(Prefix(s))]
        )
        r = find_top_t(rho, 4)
        assert [str(p) for p in r.strings] == order[:4]
        weights = [w for _, w in r.found]
        assert weights == sorted(weights, reverse=True)


class TestTermination:
    def test_frontier_exhausted(self):
        r = find_top_t(DenseState.maximally_mixed(1), 10)
        assert r.stats.termination == "frontier_exhausted"
        assert len(r.found) == 4

    def test_budget(self):
        r = find_top_t(DenseState.maximally_mixed(3), 5, budget=3)
        assert r.stats.termination == "budget_exhausted"
        assert r.stats.nodes_expanded == 3

    def test_bad_arguments(self):
        rho = DenseState.maximally_mixed(1)
        with pytest.raises(ValueError):
            find_top_t(rho, 0)
        with pytest.raises(ValueError):
            find_above_threshold(rho, 0)


class TestTieBreak:
    def test_lexicographic_among_equal_weights(self):
        # every group element of |00> has weight 1: emitted in I < X < Y < Z order
        tab = random_stabilizer(2, seed=0, gates=0)
        r = find_top_t(DenseState(tab.to_dense()), 4)
        assert [str(p) for p in r.strings] == ["II", "IZ", "ZI", "ZZ"]

    def test_sampled_leaf_weights_clamped(self):
        s = SampleSet.from_runs([[3]])  # root estimate -2, every leaf estimate is +-1
        r = find_top_t(s, 4)
        assert all(w >= 0 for _, w in r.found)
        assert [str(p) for p in r.strings][0] == "I"


def _check_invariants(source, run):
    n = source.n
    all_strings = 4**n
    emitted: set = set()
    last_top = []

    def observer(top, nodes):
        if last_top and len(last_top[-1].prefix) == n:
            emitted.add(last_top[-1].prefix)
        last_top.append(top)
        # max-first: nothing in the frontier beats the node about to be popped
        assert all(top.sort_key() <= node.sort_key() for node in nodes)
        covered = sum(4 ** (n - len(node.prefix)) for node in nodes) + len(emitted)
        assert covered == all_strings
        prefixes = [node.prefix for node in nodes] + list(emitted)
        for a, b in itertools.combinations(prefixes, 2):
            assert a[: len(b)] != b and b[: len(a)] != a

    run(source, observer)


class TestFrontierInvariants:
    def test_exact(self, states):
        for rho in states.values():
            _check_invariants(ExactSource(rho), lambda s, obs: find_top_t(s, 4**rho.n, observer=obs))
            _check_invariants(ExactSource(rho), lambda s, obs: find_above_threshold(s, 0.2, observer=obs))

    def test_sampled(self):
        for seed in range(5):
            s = SampledSource(sample_pauli_singleton(3, 64, seed))
            _check_invariants(s, lambda src, obs: find_top_t(src, 20, observer=obs))
            _check_invariants(s, lambda src, obs: find_above_threshold(src, 0.5, observer=obs))
        tab = random_stabilizer(3, seed=1)
        s = SampledSource(sample_stabilizer(tab, 128, seed=2))
        _check_invariants(s, lambda src, obs: find_top_t(src, 8, observer=obs))


def _random_dense_states(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1, 5))
        if i % 3 == 0:
            out.append(sparse_state(n, rng, int(rng.integers(1, 6))))
        else:
            out.append(DenseState.random(n, rng, rank=int(rng.integers(1, 2**n + 1))))
    return out


class TestNodeBounds:
    @pytest.mark.parametrize("eps", [0.25, 0.5])
    def test_p1_bound(self, eps):
        for rho in _random_dense_states(30, 9):
            n = rho.n
            r = find_above_threshold(rho, eps)
            assert r.stats.nodes_expanded <= n * 2**n * purity(rho) / eps**2 + n + 1

    def test_p2_bound(self):
        for rho in _random_dense_states(30, 10):
            n = rho.n
            for t in (1, 2, 4):
                r = find_top_t(rho, t)
                if len(r.found) < t:
                    continue
                w_t = r.found[-1][1]
                if w_t <= 1e-12:
                    continue
                scale = 2**n * purity(rho) / w_t
                # every popped weight is >= w_t, and one level holds at most scale such nodes
                assert r.stats.nodes_expanded <= (n + 1) * scale + 1e-9
                if n <= 3:
                    assert r.stats.nodes_expanded <= 4 * t * scale + 1e-9

    def test_sparse_per_level(self):
        rng = np.random.default_rng(12)
        cases = [DenseState.pauli_singleton(4)]
        cases += [DenseState(random_stabilizer(n, seed=n).to_dense()) for n in (2, 3, 4)]
        cases += [sparse_state(int(rng.integers(2, 5)), rng, int(rng.integers(1, 7))) for _ in range(10)]
        for rho in cases:
            values = node_values_exact(rho)
            s = sum(1 for mu, v in values.items() if len(mu) == rho.n and v > 1e-12)
            per_level = np.zeros(rho.n + 1, int)

            def observer(top, nodes):
                per_level[len(top.prefix)] += 1

            find_top_t(rho, s, observer=observer)
            assert per_level.max() <= s
            per_level[:] = 0
            find_above_threshold(rho, 1e-3, observer=observer)
            assert per_level.max() <= s


class TestQuality:
    def test_identical(self):
        assert quality_score({"IX", "XI"}, {"IX", "XI"}, 2) == 1.0

    def test_disjoint_pair(self):
        assert quality_score({"I", "X"}, {"I", "Z"}, 1) == 0.0

    def test_empty_recovery(self):
        truth = {"II", "IZ", "ZI", "ZZ"}
        assert quality_score(truth, set(), 2) == 0.0

    def test_accepts_pauli_strings(self):
        truth = {p for _, p in enumerate_group(random_stabilizer(2, seed=3))}
        assert quality_score(truth, {str(p) for p in truth}, 2) == 1.0
