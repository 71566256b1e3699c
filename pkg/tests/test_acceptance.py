"""Acceptance criteria; each test prints one PASS/FAIL line via ``record``."""

import time

import numpy as np

from conftest import random_instance, random_witness, record, split_instance
from qgw.abcgraphs import (
    ABCParams,
    HypParams,
    RandomProfile,
    abc_adjacency,
    abc_projector,
    ac_part,
    b_part,
    build,
    canonical,
    classical_embedding,
    hyp_build,
    hyp_enumerate,
    random_abc,
    to_strange_graph,
    validate,
)
from qgw.analysis import bounds_table
from qgw.classical import ClassicalGraph, components, maximum_clique
from qgw.constructions import (
    clique_bipartite,
    clique_complete_minus_one,
    clique_from_classical,
    clique_icpovm,
    clique_reflexive_variant,
    clique_symasym,
    reflexive_instance,
    strange_pi_matching,
    strange_pi_matching_witness,
)
from qgw.errors import ValidationError
from qgw.numlin import J, is_projector, random_isometry, rank, subspace_intersection_dim
from qgw.qgraph import edge_count, from_projector, invariance_defect
from qgw.superop import realign, schur_product
from qgw.witness import (
    CliqueWitness,
    ComponentWitness,
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

TOL = 1e-6


def finish(criterion, ok, detail, started):
    record(criterion, ok, f"{detail} ({time.perf_counter() - started:.1f}s)")
    assert ok, detail


# 1


def test_edge_counts_n2():
    t = time.perf_counter()
    got = [edge_count(build(canonical(k, 2))) for k in ("empty", "asym", "sym", "complete")]
    finish(1, got == [0, 4, 8, 12], f"edge counts {got}", t)


# 2


def _canonical_ok(kind, n):
    p = canonical(kind, n)
    G = build(p)
    rep = bounds_table(p, tol=TOL, trials=2)
    half = (n + 1) // 2
    want = {
        "empty": {"components": n, "chromatic": 1, "independence": n, "clique": 1},
        "complete": {"components": 1, "chromatic": None, "independence": 1, "clique": n},
        "asym": {"components": 2 if n == 2 else 1, "clique": half},
        "sym": {"components": 1, "clique": half},
    }[kind]
    checks = {
        "components": check_components,
        "chromatic": check_colouring,
        "independence": check_independent_set,
        "clique": check_clique,
    }
    for name, value in want.items():
        b = rep.bounds()[name]
        if value is None:
            if b.status != "not-colourable":
                return False
            continue
        if b.status != "exact" or b.value != value:
            return False
    for name, b in rep.bounds().items():
        if b.status == "exact":
            if b.witness is None or not checks[name](G, b.witness, TOL):
                return False
    return True


def test_canonical_rows():
    t = time.perf_counter()
    bad = [(k, n) for n in range(2, 7) for k in ("empty", "complete", "asym", "sym") if not _canonical_ok(k, n)]
    finish(2, not bad, f"20 canonical rows, failures {bad}", t)


# 3


def test_realignment_laws():
    t = time.perf_counter()
    worst = 0.0
    count = 0
    seed = 0
    while count < 500:
        p = random_instance(seed, n_range=(2, 6))
        seed += 1
        rep = validate(p)
        assert rep.quantum_graph and rep.undirected
        X = abc_adjacency(p)
        worst = max(worst, realign(realign(X)).distance(X))
        worst = max(worst, realign(X).distance(abc_adjacency(p.swapped())))
        count += 1
    finish(3, worst <= 1e-9, f"500 instances, max entry error {worst:.2e}", t)


# 4


def _corrupt(p, rng):
    n = p.n
    A, B, C = (np.array(M, dtype=complex) for M in (p.A, p.B, p.C))
    i, j = sorted(rng.choice(n, 2, replace=False)) if n > 1 else (0, 0)
    eps = float(rng.choice([1e-3, 0.05, 0.3])) * (1 if rng.random() < 0.5 else 1j)
    mode = int(rng.integers(4))
    if mode == 0:
        A[i, j] += eps
    elif mode == 1:
        C[i, j] += eps
    elif mode == 2:
        B[i, j] += eps
        B[j, i] += np.conj(eps)
    else:
        d = float(rng.uniform(0.05, 0.5))
        A[i, i] += d
        B[i, i] += d
        C[i, i] += d
    return ABCParams(A, B, C)


def test_characterization_equivalence():
    t = time.perf_counter()
    rng = np.random.default_rng(4)
    disagreements = 0
    counts = {True: 0, False: 0}
    for k in range(1000):
        p = random_instance(10_000 + k, n_range=(2, 6))
        if k >= 500:
            p = _corrupt(p, rng)
        claimed = validate(p, TOL).quantum_graph
        realigned = realign(abc_adjacency(p)).matrix
        try:
            from_projector(realigned, TOL)
            actual = True
        except ValidationError:
            actual = False
        disagreements += claimed != actual
        counts[actual] += 1
    finish(4, disagreements == 0 and counts[False] > 0,
           f"1000 instances ({counts[True]} graphs, {counts[False]} not), {disagreements} disagreements", t)


# 5


def _probe(rng, n, parts, m):
    """A decomposition into m > comps parts: random, or a refinement of the classical parts."""
    if rng.random() < 0.5:
        U = random_isometry(n, n, rng)
        cuts = np.sort(rng.choice(np.arange(1, n), m - 1, replace=False))
        groups = np.split(np.arange(n), cuts)
        return ComponentWitness([U[:, g] @ U[:, g].conj().T for g in groups])
    big = [q for q in parts if len(q) > 1]
    q = big[int(rng.integers(len(big)))]
    U = random_isometry(len(q), len(q), rng)
    cut = int(rng.integers(1, len(q)))
    projs = [coordinate_projector(r, n) for r in parts if r is not q]
    for cols in (U[:, :cut], U[:, cut:]):
        P = np.zeros((n, n), dtype=complex)
        P[np.ix_(q, q)] = cols @ cols.conj().T
        projs.append(P)
    return ComponentWitness(projs)


def test_component_equivalence():
    t = time.perf_counter()
    rng = np.random.default_rng(5)
    mismatches = 0
    instances = []
    for k in range(200):
        n = int(rng.integers(2, 9))
        p = random_abc(n, rng, RandomProfile(float(rng.uniform(0.05, 0.5)), 0.0, int(rng.integers(0, n)), True))
        G = build(p)
        parts = components(to_strange_graph(p))
        mismatches += search_coordinate_components(G, tol=TOL).parts != len(parts)
        if len(parts) < n:
            instances.append((G, parts))
    exceed = 0
    for k in range(10_000):
        G, parts = instances[k % len(instances)]
        m = int(rng.integers(len(parts) + 1, G.n + 1))
        exceed += check_components(G, _probe(rng, G.n, parts, m), TOL)
    finish(5, mismatches == 0 and exceed == 0,
           f"200 instances, {mismatches} count mismatches; 10000 probes, {exceed} exceed the classical count", t)


# 6


def test_splitting_principle():
    t = time.perf_counter()
    disagreements = 0
    for seed in range(200):
        rng = np.random.default_rng(600 + seed)
        p, parts = split_instance(rng)
        w = random_witness(rng, p, parts)
        full = check_components(build(p), w, TOL)
        both = check_components(build(ac_part(p)), w, TOL) and check_components(build(b_part(p)), w, TOL)
        disagreements += full != both
    finish(6, disagreements == 0, f"200 pairs, {disagreements} disagreements", t)


# 7


def test_counterexample_family():
    t = time.perf_counter()
    rows = []
    for n in (2, 4, 6, 8):
        p = strange_pi_matching(n)
        w = strange_pi_matching_witness(n)
        rows.append((len(components(to_strange_graph(p))) == n // 2, w.parts == n, check_components(build(p), w, TOL)))
    finish(7, all(all(r) for r in rows), f"n=2,4,6,8 {rows}", t)


# 8


def test_icpovm_clique():
    t = time.perf_counter()
    bad = []
    for n in range(4, 11):
        B = np.eye(n) - J(n) / n
        d = np.diag(np.diag(B))
        G = build(ABCParams(d, B, d))
        k = int(np.floor(np.sqrt(n)))
        w = clique_icpovm(n)
        bound = int(np.floor(np.sqrt(rank(B) + 1)))
        if not (w.k == k and check_clique(G, w, TOL) and bound < k + 1):
            bad.append(n)
    finish(8, not bad, f"n=4..10, failures {bad}", t)


# 9


def test_clique_constructions():
    t = time.perf_counter()
    results = {}
    for n in (4, 6, 8):
        g = ClassicalGraph.complete_bipartite(n // 2, n // 2)
        w = clique_bipartite(n)
        results[f"bipartite{n}"] = w.k == n // 2 and check_clique(build(classical_embedding(g)), w, TOL)
    for n in range(3, 7):
        w = clique_complete_minus_one(n)
        results[f"complete{n}"] = w.k == n - 1 and check_clique(build(classical_embedding(ClassicalGraph.complete(n))), w, TOL)
    for seed in range(10):
        g = ClassicalGraph.random(7, 0.6, seed)
        c = maximum_clique(g)
        if len(c) >= 2:
            w = clique_from_classical(g, c)
            results[f"classical{seed}"] = w.k == len(c) - 1 and check_clique(build(classical_embedding(g)), w, TOL)
        wr = clique_reflexive_variant(g, c)
        results[f"reflexive{seed}"] = wr.k == len(c) and check_clique(build(reflexive_instance(g)), wr, TOL)
    for n in range(2, 7):
        w = clique_symasym(n)
        results[f"symasym{n}"] = w.k == (n + 1) // 2 and all(
            check_clique(build(canonical(kind, n)), w, TOL) for kind in ("sym", "asym"))
    bad = [k for k, ok in results.items() if not ok]
    finish(9, not bad, f"{len(results)} witnesses, rejected {bad}", t)


# 10


def _signed_permutation(n, rng):
    P = np.eye(n)[rng.permutation(n)]
    return P * rng.choice([-1.0, 1.0], n)


def test_invariance_suite():
    t = time.perf_counter()
    rng = np.random.default_rng(10)
    worst_pass = 0.0
    worst_violation = np.inf

    def passes(G, gens):
        nonlocal worst_pass
        for u in gens:
            worst_pass = max(worst_pass, invariance_defect(G, u, TOL))

    for n in (2, 3, 4):
        passes(build(canonical("complete", n)), [random_isometry(n, n, rng) for _ in range(50)])
        for kind in ("sym", "asym"):
            G = build(canonical(kind, n))
            passes(G, [np.linalg.qr(rng.standard_normal((n, n)))[0] for _ in range(50)])
            worst_violation = min(worst_violation, max(invariance_defect(G, random_isometry(n, n, rng)) for _ in range(3)))
    for seed in range(10):
        n = int(rng.integers(2, 6))
        pab = random_abc(n, rng, RandomProfile(0.5, 0.0, int(rng.integers(0, n)), True))
        passes(build(pab), [np.diag(np.exp(2j * np.pi * rng.random(n))) for _ in range(50)])
        pabc = random_abc(n, rng, RandomProfile(0.3, 0.5, int(rng.integers(0, n)), True))
        passes(build(pabc), [np.diag(rng.choice([-1.0, 1.0], n)) for _ in range(50)])
    for n in (3, 4):
        for entry in hyp_enumerate(n):
            passes(build(hyp_build(entry.params)), [_signed_permutation(n, rng) for _ in range(50)])
    ok = worst_pass <= 1e-8 and worst_violation >= 1e-3
    finish(10, ok, f"max passing commutator {worst_pass:.1e}, min designed violation {worst_violation:.2e}", t)


# 11


def test_hyp_enumeration():
    t = time.perf_counter()
    ok = True
    details = []
    for n in (3, 4, 5):
        entries = hyp_enumerate(n)
        valid = all(validate(hyp_build(e.params)).quantum_graph for e in entries)
        loopless = [validate(hyp_build(e.params)).loopless for e in entries]
        flags_match = loopless == [e.loopless for e in entries]
        # independent scan of a grid containing every candidate value
        values = sorted({-1.0, -0.5, -1 / n, 0.0, 1 / n, 0.5, 1 - 1 / n, 1.0})
        found = set()
        for a in values:
            for b in values:
                for ap in values:
                    for c in values:
                        P = abc_projector(hyp_build(HypParams(n, a, ap, b, c))).matrix
                        if is_projector(P, TOL):
                            found.add((round(a, 9), round(ap, 9), round(b, 9), round(c, 9)))
        listed = {(round(e.params.a, 9), round(e.params.a_prime, 9), round(e.params.b, 9), round(e.params.c, 9)) for e in entries}
        quads = {
            "empty": (0.0, 0.0, 0.0, 0.0),
            "complete": (1 - 1 / n, 1.0, -1 / n, 0.0),
            "sym": (1 - 1 / n, 0.5, -1 / n, 0.5),
            "asym": (0.0, 0.5, 0.0, -0.5),
        }
        dist = max(build(hyp_build(HypParams(n, *q))).distance(build(canonical(kind, n))) for kind, q in quads.items())
        row_ok = (len(entries) == 16 and sum(loopless) == 8 and valid and flags_match
                  and found == listed and dist <= 1e-9)
        ok &= row_ok
        details.append(f"n={n}: {len(entries)} graphs, {sum(loopless)} loopless, grid {len(found)}, dist {dist:.0e}")
    finish(11, ok, "; ".join(details), t)


# 12


def test_subspace_statistics():
    t = time.perf_counter()
    zero = sum(subspace_intersection_dim(V, V.conj()) == 0 for V in (random_isometry(6, 3, s) for s in range(100)))
    finish(12, zero >= 99, f"{zero}/100 seeds with trivial intersection", t)


# 13


def _consistent(rep, name, value):
    b = rep.bounds()[name]
    if name == "chromatic":
        return not b.not_colourable and (b.lower is None or b.lower <= value)
    return b.upper is None or value <= b.upper


def test_property_suites():
    t = time.perf_counter()
    disagree = 0
    for seed in range(1000):
        rng = np.random.default_rng(13_000 + seed)
        p = random_instance(13_000 + seed, n_range=(2, 5))
        k = int(rng.integers(1, p.n + 1))
        first, second = clique_criteria(build(p), CliqueWitness(random_isometry(p.n, k, rng)), TOL)
        disagree += first != second

    contradictions = 0
    schur = 0.0
    for seed in range(1000):
        p = random_instance(20_000 + seed, n_range=(2, 5))
        G = build(p)
        rep = bounds_table(p, tol=TOL, seed=seed, trials=1)
        found = [("components", search_coordinate_components(G, tol=TOL).parts),
                 ("independence", search_coordinate_independent(G, tol=TOL).k)]
        c = search_coordinate_colouring(G, tol=TOL)
        if c is not None:
            found.append(("chromatic", c.colours))
        kk = 1 + (rep.clique.upper or p.n)
        if kk <= p.n and random_clique_search(G, kk, trials=2, seed=seed, tol=TOL) is not None:
            contradictions += 1
        contradictions += sum(not _consistent(rep, name, v) for name, v in found)
        if seed < 100:
            nA = G.normalized_adjacency()
            schur = max(schur, schur_product(nA, nA).distance(nA))
    ok = disagree == 0 and contradictions == 0 and schur <= 1e-7
    finish(13, ok, f"1000 clique pairs, {disagree} criterion disagreements; 1000 reports, "
                   f"{contradictions} contradictions; Schur idempotency error {schur:.1e}", t)
