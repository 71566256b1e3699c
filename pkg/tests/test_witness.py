import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_instance, random_witness, split_instance
from qgw.abcgraphs import (
    ABCParams,
    RandomProfile,
    ac_part,
    b_part,
    build,
    canonical,
    classical_embedding,
    random_abc,
)
from qgw.classical import ClassicalGraph, chromatic_number, components, independence_number
from qgw.errors import BudgetError, InputError
from qgw.numlin import J, random_isometry, subspace_intersection_dim
from qgw.qgraph import from_projector
from qgw.superop import identity
from qgw.witness import (
    CliqueWitness,
    ColouringWitness,
    ComponentWitness,
    IndependenceWitness,
    check_clique,
    check_colouring,
    check_components,
    check_independent_set,
    clique_criteria,
    coordinate_projector,
    random_clique_search,
    search_coordinate_colouring,
    search_coordinate_components,
    search_coordinate_independent,
)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]
        yield [[first]] + p


def coord(parts, n, cls=ComponentWitness):
    return cls([coordinate_projector(p, n) for p in parts])


def diagonal_part(n):
    B = np.eye(n) - J(n) / n
    d = np.diag(np.diag(B))
    return ABCParams(d, B, d)


def rank_one(psi):
    psi = np.asarray(psi, complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


# checker examples


@pytest.mark.parametrize("n", [2, 3, 4])
def test_component_examples(n):
    empty = build(canonical("empty", n))
    assert check_components(empty, coord([[i] for i in range(n)], n))
    K = build(canonical("complete", n))
    for split in range(1, n):
        assert not check_components(K, coord([list(range(split)), list(range(split, n))], n))
    U = random_isometry(n, n, 3)
    P = U[:, :1] @ U[:, :1].conj().T
    assert not check_components(K, ComponentWitness([P, np.eye(n) - P]))


def test_gasym_two_components():
    w = ComponentWitness([rank_one([1, 1j]), rank_one([1, -1j])])
    assert check_components(build(canonical("asym", 2)), w)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_colouring_examples(n):
    assert check_colouring(build(canonical("empty", n)), ColouringWitness([np.eye(n)]))
    g = ClassicalGraph.complete_bipartite(n, n)
    classes = [list(range(n)), list(range(n, 2 * n))]
    assert check_colouring(build(classical_embedding(g)), coord(classes, 2 * n, ColouringWitness))


def test_complete_graph_not_coloured_by_rank_one_pairs(rng):
    K = build(canonical("complete", 2))
    for _ in range(20):
        U = random_isometry(2, 2, rng)
        P = np.outer(U[:, 0], U[:, 0].conj())
        assert not check_colouring(K, ColouringWitness([P, np.eye(2) - P]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_independence_examples(n, rng):
    assert check_independent_set(build(canonical("empty", n)), IndependenceWitness(np.eye(n)))
    K = build(canonical("complete", n))
    for _ in range(10):
        V = random_isometry(n, 2, rng)
        assert not check_independent_set(K, IndependenceWitness(V @ V.conj().T))
    g = ClassicalGraph.cycle(6)
    assert check_independent_set(build(classical_embedding(g)), IndependenceWitness(coordinate_projector([0, 2, 4], 6)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_clique_examples(n, rng):
    assert check_clique(build(canonical("complete", n)), CliqueWitness(np.eye(n)))
    empty = build(canonical("empty", n))
    for k in range(2, n + 1):
        assert not check_clique(empty, CliqueWitness(random_isometry(n, k, rng)))
    m = 3
    V = np.vstack([np.eye(m), np.eye(m)]) / np.sqrt(2)
    assert check_clique(build(classical_embedding(ClassicalGraph.complete_bipartite(m, m))), CliqueWitness(V))


def test_witness_invariants():
    with pytest.raises(InputError):
        check_components(build(canonical("empty", 2)), ComponentWitness([np.diag([1.0, 0.0])]))
    with pytest.raises(InputError):
        check_components(build(canonical("empty", 2)), ComponentWitness([np.eye(2), np.zeros((2, 2))]))
    with pytest.raises(InputError):
        check_independent_set(build(canonical("empty", 2)), IndependenceWitness([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(InputError):
        check_clique(build(canonical("empty", 3)), CliqueWitness(np.ones((3, 2))))
    with pytest.raises(InputError):
        check_components(build(canonical("empty", 3)), coord([[0], [1]], 2))


# coordinate searches against literal enumeration


def brute_components(G):
    n = G.n
    return max(len(p) for p in set_partitions(list(range(n))) if check_components(G, coord(p, n)))


def brute_colouring(G):
    n = G.n
    good = [len(p) for p in set_partitions(list(range(n))) if check_colouring(G, coord(p, n, ColouringWitness))]
    return min(good) if good else None


def brute_independent(G):
    n = G.n
    for k in range(n, 0, -1):
        for T in itertools.combinations(range(n), k):
            if check_independent_set(G, IndependenceWitness(coordinate_projector(T, n))):
                return k
    return 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_coordinate_searches_match_enumeration(seed):
    p = random_instance(seed, n_range=(2, 5))
    G = build(p)
    w = search_coordinate_components(G)
    assert w.parts == brute_components(G)
    c = search_coordinate_colouring(G)
    assert (None if c is None else c.colours) == brute_colouring(G)
    assert search_coordinate_independent(G).k == brute_independent(G)


@pytest.mark.parametrize("seed", range(6))
def test_searches_on_classical_embedding(seed):
    g = ClassicalGraph.random(7, 0.35, seed)
    G = build(classical_embedding(g))
    assert search_coordinate_components(G).parts == len(components(g))
    assert search_coordinate_colouring(G).colours == chromatic_number(g)
    assert search_coordinate_colouring(G, k=chromatic_number(g) - 1) is None
    assert search_coordinate_independent(G).k == independence_number(g)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_search_examples(n):
    assert search_coordinate_components(build(canonical("complete", n))).parts == 1
    assert search_coordinate_components(build(diagonal_part(n))).parts == n
    assert search_coordinate_independent(build(canonical("empty", n))).k == n


def test_max_parts():
    G = build(canonical("empty", 5))
    w = search_coordinate_components(G, max_parts=2)
    assert w.parts == 2 and check_components(G, w)


def test_search_budget():
    with pytest.raises(BudgetError):
        search_coordinate_components(from_projector(np.zeros((169, 169))))


# splitting principle


@pytest.mark.parametrize("seed", range(150))
def test_component_splitting_iff(seed):
    rng = np.random.default_rng(seed)
    p, parts = split_instance(rng)
    w = random_witness(rng, p, parts)
    full = check_components(build(p), w)
    both = check_components(build(ac_part(p)), w) and check_components(build(b_part(p)), w)
    assert full == both


def test_splitting_sample_hits_every_case():
    seen = set()
    for seed in range(150):
        rng = np.random.default_rng(seed)
        p, parts = split_instance(rng)
        w = random_witness(rng, p, parts)
        seen.add((check_components(build(ac_part(p)), w), check_components(build(b_part(p)), w)))
    assert seen == {(a, b) for a in (True, False) for b in (True, False)}


@pytest.mark.parametrize("seed", range(40))
def test_clique_splitting(seed):
    p = random_instance(seed, n_range=(2, 5), loopless=True)
    for part in (ac_part(p), b_part(p)):
        Gp = build(part)
        for k in range(1, p.n + 1):
            w = random_clique_search(Gp, k, trials=5, seed=seed)
            if w is not None:
                assert check_clique(build(p), w)


# clique criteria


@pytest.mark.parametrize("seed", range(200))
def test_clique_criteria_agree(seed):
    rng = np.random.default_rng(seed)
    p = random_instance(seed, n_range=(2, 5))
    G = build(p)
    k = int(rng.integers(1, p.n + 1))
    V = np.eye(p.n, k) if rng.random() < 0.3 else random_isometry(p.n, k, rng)
    first, second = clique_criteria(G, CliqueWitness(V))
    assert first == second


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_diagonal_part_clique_bound(n):
    rng = np.random.default_rng(n)
    for r in range(0, n):
        p = random_abc(n, rng, RandomProfile(0.0, 0.0, r, True))
        G = build(p)
        for k in range(1, n + 1):
            w = random_clique_search(G, k, trials=10, seed=k)
            if w is not None:
                assert k * k <= r + 1


def test_random_clique_search_examples():
    w = random_clique_search(build(canonical("complete", 4)), 4, trials=1)
    assert w is not None and np.allclose(w.V, np.eye(4))
    G = build(diagonal_part(4))
    assert random_clique_search(G, 3, trials=300, seed=1) is None
    assert random_clique_search(build(canonical("sym", 4)), 2, trials=20, seed=0) is not None
    w1 = random_clique_search(build(canonical("sym", 4)), 2, trials=20, seed=5)
    w2 = random_clique_search(build(canonical("sym", 4)), 2, trials=20, seed=5)
    assert np.array_equal(w1.V, w2.V)
    with pytest.raises(InputError):
        random_clique_search(G, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.integers(0, 10**6))
def test_large_isometry_meets_conjugate(n, seed):
    k = int(np.random.default_rng(seed).integers((n + 1) // 2 + 1, n + 1)) if (n + 1) // 2 < n else n
    V = random_isometry(n, k, seed)
    assert subspace_intersection_dim(V, V.conj()) >= 2 * k - n >= 2


def test_identity_superop_is_not_a_graph_shortcut():
    # sanity check on the oracle used above: the full space has every loop
    G = from_projector(identity(3))
    assert not check_colouring(G, ColouringWitness([np.eye(3)]))
