from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicrig import (
    ConicGraph,
    RigidityOracle,
    extend_to_minimally_rigid,
    fundamental_circuit,
    s_conic,
    s_euclidean,
    swap,
)
from golden import G1, G2, G2_CIRCUIT_12, GAMMA5
from oracles import sparsity_rank


def edge_sets(max_n=7):
    def build(n):
        pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
        return st.tuples(
            st.just(n), st.lists(st.sampled_from(pairs), max_size=len(pairs))
        )

    return st.integers(3, max_n).flatmap(build)


def test_oracle_rejects_the_line():
    with pytest.raises(ValueError):
        RigidityOracle(4, 1)
    with pytest.raises(ValueError):
        RigidityOracle(4, 3, backend="pebble")
    with pytest.raises(ValueError):
        RigidityOracle(4, 2, backend="cholesky")


@given(edge_sets())
@settings(max_examples=50)
def test_backends_agree_in_the_plane(ne):
    n, edges = ne
    pebble = RigidityOracle(n, 2, backend="pebble")
    numeric = RigidityOracle(n, 2, backend="numeric")
    assert pebble.euclidean_rank(edges) == numeric.euclidean_rank(edges)


def test_euclidean_rank_caches_consistently():
    oracle = RigidityOracle(5, 2)
    edges = GAMMA5.all_pairs()
    assert oracle.euclidean_rank(edges) == 7
    assert oracle.euclidean_rank(list(reversed(edges))) == 7  # same canon key
    assert oracle.is_independent(G1.edges)


def test_conic_rank_of_the_family_fixture():
    oracle = RigidityOracle(5, 2)
    assert oracle.conic_rank(GAMMA5) == s_conic(5, 2) == 11
    assert oracle.conic_independent(GAMMA5)
    # dropping one simple edge keeps independence, loses rigidity
    smaller = ConicGraph(5, GAMMA5.simple_edges[1:], GAMMA5.double_edges)
    assert oracle.conic_rank(smaller) == 10
    assert oracle.conic_independent(smaller)


def test_extend_from_empty_seed():
    oracle = RigidityOracle(6, 2)
    pool = [(u, w) for u in range(6) for w in range(u + 1, 6)]
    basis = extend_to_minimally_rigid([], pool, oracle)
    assert len(basis) == s_euclidean(6, 2) == 9
    assert oracle.is_independent(basis)
    assert basis == extend_to_minimally_rigid([], pool, oracle)  # deterministic


def test_extend_respects_the_seed_and_pool_order():
    oracle = RigidityOracle(5, 2)
    seed = [(0, 4), (1, 4)]
    pool = sorted((u, w) for u in range(5) for w in range(u + 1, 5))
    basis = extend_to_minimally_rigid(seed, pool, oracle)
    assert set(seed) <= set(basis)
    assert len(basis) == 7
    # greedy in pool order: the lexicographically first independent pick
    assert (0, 1) in basis


def test_extend_rejects_dependent_seed():
    oracle = RigidityOracle(4, 2)
    k4 = [(u, w) for u in range(4) for w in range(u + 1, 4)]
    with pytest.raises(ValueError):
        extend_to_minimally_rigid(k4, [], oracle)


def test_extend_fails_on_a_thin_pool():
    oracle = RigidityOracle(5, 2)
    with pytest.raises(ValueError):
        extend_to_minimally_rigid([], [(0, 1), (1, 2)], oracle)


def test_extend_numeric_backend_d3():
    oracle = RigidityOracle(5, 3)
    pool = [(u, w) for u in range(5) for w in range(u + 1, 5)]
    basis = extend_to_minimally_rigid([], pool, oracle)
    assert len(basis) == s_euclidean(5, 3) == 9
    assert oracle.is_independent(basis)


def test_fundamental_circuit_definition():
    oracle = RigidityOracle(5, 2)
    circuit = fundamental_circuit(G2.edges, (1, 2), oracle)
    assert circuit == G2_CIRCUIT_12
    # definitional cross-check, edge by edge
    for e in G2.edges:
        candidate = (set(G2.edges) - {e}) | {(1, 2)}
        assert oracle.is_independent(candidate) == (e in circuit)


def test_fundamental_circuit_validates_inputs():
    oracle = RigidityOracle(5, 2)
    with pytest.raises(ValueError):
        fundamental_circuit(G2.edges[:-1], (1, 2), oracle)  # too small
    with pytest.raises(ValueError):
        fundamental_circuit(G2.edges, (2, 4), oracle)  # already present


def test_swap_reproduces_the_companion_basis():
    oracle = RigidityOracle(5, 2)
    assert swap(G2.edges, (1, 2), (2, 4), oracle) == G1.edges


def test_swap_rejects_a_non_generating_edge():
    # triangle plus two ears; the circuit of (3, 4) stays inside {0, 1, 3, 4}
    basis = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))
    oracle = RigidityOracle(5, 2)
    circuit = fundamental_circuit(basis, (3, 4), oracle)
    assert (1, 2) not in circuit
    with pytest.raises(ValueError, match="does not generate"):
        swap(basis, (3, 4), (1, 2), oracle)


@given(edge_sets(max_n=6))
@settings(max_examples=40)
def test_numeric_euclidean_rank_matches_counting(ne):
    n, edges = ne
    oracle = RigidityOracle(n, 2, backend="numeric")
    assert oracle.euclidean_rank(edges) == sparsity_rank(n, edges)
