"""Graph-parameter reports: witnesses found by search plus theorem bounds.

Each parameter is reported as exact, bounded or unknown.  Lower bounds on
components, independence and clique number, and upper bounds on the
chromatic number, are backed by a witness accepted by its checker.  The
opposite bounds come from theorems (tagged ``theorem:...``) or dimension
counts (tagged ``bound:...``).  "Not colourable" is only ever set by a
theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .abcgraphs import ABCParams, build, family, to_strange_graph, validate
from .classical import (
    ClassicalGraph,
    chromatic_number,
    components,
    independence_number,
    maximum_clique,
    optimal_colouring,
    underlying,
)
from .constructions import (
    clique_from_classical,
    clique_icpovm,
    clique_symasym,
    colouring_from_classical,
    components_from_classical,
    fourier_colouring,
    gasym_n2_components,
    is_connected_abc,
    strange_edge_components,
)
from .errors import InconsistencyError, InputError
from .numlin import DEFAULT_TOL, J, max_abs, rank
from .qgraph import QuantumGraph, edge_count, has_all_loops, is_loopless
from .witness import (
    CliqueWitness,
    ColouringWitness,
    ComponentWitness,
    IndependenceWitness,
    MAX_SEARCH_N,
    check_clique,
    check_colouring,
    check_components,
    check_independent_set,
    coordinate_projector,
    random_clique_search,
    search_coordinate_colouring,
    search_coordinate_components,
    search_coordinate_independent,
)

__all__ = ["Bound", "ParameterReport", "analyze_graph", "bounds_table", "PARAMETERS"]

PARAMETERS = ("components", "chromatic", "independence", "clique")


@dataclass
class Bound:
    """Bounds on one integer parameter, with provenance."""

    name: str
    lower: int | None = None
    upper: int | None = None
    not_colourable: bool = False
    lower_source: str | None = None
    upper_source: str | None = None
    witness: Any = None

    @property
    def status(self) -> str:
        if self.not_colourable:
            return "not-colourable"
        if self.lower is not None and self.lower == self.upper:
            return "exact"
        if self.lower is None and self.upper is None:
            return "unknown"
        return "bounded"

    @property
    def value(self) -> int | None:
        return self.lower if self.status == "exact" else None

    def raise_lower(self, v: int, source: str, witness: Any = None) -> None:
        if self.lower is None or v > self.lower:
            self.lower, self.lower_source = int(v), source
            if self.name != "chromatic":
                self.witness = witness
        self._check()

    def lower_upper(self, v: int, source: str, witness: Any = None) -> None:
        if self.upper is None or v < self.upper:
            self.upper, self.upper_source = int(v), source
            if self.name == "chromatic":
                self.witness = witness
        self._check()

    def set_not_colourable(self, source: str) -> None:
        if self.witness is not None:
            raise InconsistencyError(f"{source} claims not colourable but a colouring was accepted")
        self.not_colourable = True
        self.lower = self.upper = None
        self.lower_source = self.upper_source = source

    def _check(self) -> None:
        if self.not_colourable and self.name == "chromatic" and self.witness is not None:
            raise InconsistencyError("a colouring was accepted for a graph proved not colourable")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise InconsistencyError(
                f"{self.name}: lower bound {self.lower} ({self.lower_source}) exceeds "
                f"upper bound {self.upper} ({self.upper_source})"
            )

    def describe(self) -> str:
        s = self.status
        if s == "not-colourable":
            return "not colourable"
        if s == "exact":
            return str(self.lower)
        if s == "unknown":
            return "?"
        lo = "?" if self.lower is None else str(self.lower)
        hi = "?" if self.upper is None else str(self.upper)
        return f"[{lo}, {hi}]"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "lower_source": self.lower_source,
            "upper_source": self.upper_source,
        }


@dataclass
class ParameterReport:
    """Components, chromatic, independence and clique bounds for one graph."""

    n: int
    family: str
    edges: int
    components: Bound = field(default_factory=lambda: Bound("components"))
    chromatic: Bound = field(default_factory=lambda: Bound("chromatic"))
    independence: Bound = field(default_factory=lambda: Bound("independence"))
    clique: Bound = field(default_factory=lambda: Bound("clique"))
    notes: list[str] = field(default_factory=list)

    def bounds(self) -> dict[str, Bound]:
        return {name: getattr(self, name) for name in PARAMETERS}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "edges": self.edges,
            "parameters": {k: b.to_dict() for k, b in self.bounds().items()},
            "notes": list(self.notes),
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _isqrt(m: int) -> int:
    r = int(np.floor(np.sqrt(m)))
    while (r + 1) ** 2 <= m:
        r += 1
    while r * r > m:
        r -= 1
    return r


def _clique_search(G: QuantumGraph, rep: ParameterReport, seed: int, trials: int, tol: float) -> None:
    b = rep.clique
    k = (b.lower or 0) + 1
    while b.upper is None or k <= b.upper:
        w = random_clique_search(G, k, trials=trials, seed=seed + k, tol=tol)
        if w is None:
            break
        b.raise_lower(k, "witness:random-clique-search", w)
        k += 1


def analyze_graph(
    G: QuantumGraph,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    trials: int = 20,
    exact_max_n: int = MAX_SEARCH_N,
    family_name: str = "generic",
) -> ParameterReport:
    """Bounds valid for every quantum graph, from searches and dimension counts."""
    n, d = G.n, G.dim
    rep = ParameterReport(n, family_name, edge_count(G))
    searchable = n <= min(exact_max_n, MAX_SEARCH_N)
    eye = np.eye(n, dtype=complex)

    comp = rep.components
    comp.lower_upper(n, "bound:at-most-n-projectors")
    comp.raise_lower(1, "witness:identity", ComponentWitness([eye]))
    if searchable:
        w = search_coordinate_components(G, tol=tol)
        comp.raise_lower(w.parts, "witness:coordinate-search", w)

    chi = rep.chromatic
    if d == 0:
        chi.raise_lower(1, "bound:trivial")
    else:
        chi.raise_lower(2, "bound:nonempty-operator-space")
    if has_all_loops(G, tol):
        chi.set_not_colourable("theorem:identity-in-operator-space")
    else:
        candidates = []
        if d == 0:
            candidates.append((ColouringWitness([eye]), "witness:identity"))
        if searchable:
            w = search_coordinate_colouring(G, tol=tol)
            if w is not None:
                candidates.append((w, "witness:coordinate-search"))
        if is_loopless(G, tol) and all(max_abs(b - np.diag(np.diag(b))) <= tol for b in G.basis):
            candidates.append((fourier_colouring(n), "witness:fourier-basis"))
        for w, src in sorted(candidates, key=lambda c: c[0].colours):
            if check_colouring(G, w, tol):
                chi.lower_upper(w.colours, src, w)
                break

    ind = rep.independence
    ind.lower_upper(n, "bound:rank-at-most-n")
    ind.raise_lower(1, "witness:rank-one-projector", IndependenceWitness(coordinate_projector([0], n)))
    if d == 0:
        ind.raise_lower(n, "witness:identity", IndependenceWitness(eye))
    elif searchable:
        w = search_coordinate_independent(G, tol=tol)
        ind.raise_lower(w.k, "witness:coordinate-search", w)

    cl = rep.clique
    dim_with_identity = d + (0 if has_all_loops(G, tol) else 1)
    cl.lower_upper(min(n, _isqrt(dim_with_identity)), "bound:dimension")
    cl.raise_lower(1, "witness:unit-vector", CliqueWitness(eye[:, :1]))
    _clique_search(G, rep, seed, trials, tol)
    return rep


def _accept(bound: Bound, value: int, source: str, witness: Any, ok: bool) -> None:
    if not ok:
        raise InconsistencyError(f"construction {source} was rejected by its checker")
    if bound.name == "chromatic":
        bound.lower_upper(value, source, witness)
    else:
        bound.raise_lower(value, source, witness)


def bounds_table(
    p: ABCParams,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    trials: int = 20,
    exact_max_n: int = MAX_SEARCH_N,
) -> ParameterReport:
    """Report for an undirected ABC graph.

    Starts from :func:`analyze_graph` and adds the family-specific theorem
    bounds and constructions: canonical graphs, the diagonal embedding
    ``X_{A,·}``, the diagonal part ``X_{·,B}``, and their combinations via
    the splitting principle.

    Raises
    ------
    InputError
        If ``p`` is not an undirected quantum graph.
    """
    vr = validate(p, tol)
    if not vr.undirected:
        raise InputError("bounds_table requires an undirected instance: " + "; ".join(vr.reasons))
    n = p.n
    G = build(p, tol)
    fam = family(p, tol)
    rep = analyze_graph(G, tol, seed, trials, exact_max_n, fam)
    sg = to_strange_graph(p, tol)
    U = underlying(sg)
    loopless = vr.loopless
    has_strange = bool(sg.strange_edges)
    b_diagonal = max_abs(p.B - np.diag(np.diag(p.B))) <= tol
    rkB = rank(p.B, tol)
    if has_strange:
        rep.notes.append("strange-edge phases are treated as inert for classical parameters of the strange graph")

    comp, chi, ind, cl = rep.components, rep.chromatic, rep.independence, rep.clique

    if fam in ("empty", "complete", "sym", "asym"):
        _canonical_rows(fam, n, G, rep, tol)
        return rep

    # components
    verdict = is_connected_abc(p, tol)
    if verdict.status == "connected":
        comp.lower_upper(1, verdict.reason)
    elif verdict.witness is not None:
        comp.raise_lower(verdict.witness.parts, verdict.reason, verdict.witness)
    if not has_strange:
        comp.lower_upper(len(components(sg)), "theorem:classical-components")
    w = _split_strange_components(G, sg, tol)
    if w is not None:
        comp.raise_lower(w.parts, "witness:split-strange-edges", w)

    A_classical = ClassicalGraph.from_edges(n, sg.classical_edges)
    if loopless:
        # chromatic number
        if not has_strange and b_diagonal:
            comp_chi = chromatic_number(U)
            chi.raise_lower(comp_chi, "theorem:classical-chromatic")
        if not has_strange:
            chi.raise_lower(chromatic_number(U), "theorem:chromatic-splitting")
        if not b_diagonal:
            chi.raise_lower(_ceil_div(n, n - rkB), "theorem:diagonal-part-chromatic")
        if b_diagonal and n <= 20:
            classes = optimal_colouring(U)
            w = colouring_from_classical(classes, n)
            _accept(chi, len(classes), "witness:strange-graph-colouring", w, check_colouring(G, w, tol))
        # independence number
        if not b_diagonal:
            ind.lower_upper(n - rkB, "theorem:diagonal-part-independence")
            if not (sg.classical_edges or sg.strange_edges):
                ind.raise_lower(1 + (n - 1) // (rkB + 1), "theorem:diagonal-part-independence-lower")
        # clique number
        if b_diagonal and not has_strange and sg.classical_edges:
            cl.lower_upper(n - 1, "theorem:classical-clique-upper")
    ind.lower_upper(independence_number(U), "theorem:strange-graph-independence")

    if A_classical.edges:
        c = maximum_clique(A_classical)
        if len(c) >= 2:
            w = clique_from_classical(A_classical, c)
            _accept(cl, len(c) - 1, "witness:classical-clique", w, check_clique(G, w, tol))
    if n >= 4 and max_abs(p.B - (np.eye(n) - J(n) / n)) <= tol:
        w = clique_icpovm(n, tol)
        _accept(cl, w.k, "witness:icpovm", w, check_clique(G, w, tol))
    if not (sg.classical_edges or sg.strange_edges) and loopless:
        cl.lower_upper(_isqrt(rkB + 1), "theorem:diagonal-part-clique")
    _clique_search(G, rep, seed, trials, tol)
    return rep


def _split_strange_components(G: QuantumGraph, sg, tol: float) -> ComponentWitness | None:
    """Split two-vertex strange components of the strange graph where possible."""
    n = G.n
    parts = components(sg)
    splittable = [
        idx for idx, part in enumerate(parts) if len(part) == 2 and tuple(part) in sg.strange_edges
    ]
    if not splittable:
        return None

    def witness(split: set[int]) -> ComponentWitness:
        projs = []
        for idx, part in enumerate(parts):
            if idx in split:
                theta = sg.strange_edges[tuple(part)]
                for P in strange_edge_components(theta).projectors:
                    R = np.zeros((n, n), dtype=complex)
                    R[np.ix_(part, part)] = P
                    projs.append(R)
            else:
                projs.append(coordinate_projector(part, n))
        return ComponentWitness(projs)

    chosen: set[int] = set()
    full = witness(set(splittable))
    if check_components(G, full, tol):
        return full
    for idx in splittable:
        if check_components(G, witness(chosen | {idx}), tol):
            chosen.add(idx)
    return witness(chosen) if chosen else None


def _canonical_rows(kind: str, n: int, G: QuantumGraph, rep: ParameterReport, tol: float) -> None:
    comp, chi, ind, cl = rep.components, rep.chromatic, rep.independence, rep.clique
    eye = np.eye(n, dtype=complex)
    half = (n + 1) // 2
    if kind == "empty":
        w = components_from_classical([[i] for i in range(n)], n)
        _accept(comp, n, "witness:coordinate-singletons", w, check_components(G, w, tol))
        w = ColouringWitness([eye])
        _accept(chi, 1, "witness:identity", w, check_colouring(G, w, tol))
        w = IndependenceWitness(eye)
        _accept(ind, n, "witness:identity", w, check_independent_set(G, w, tol))
        cl.lower_upper(1, "theorem:empty-clique")
        return
    if kind == "complete":
        comp.lower_upper(1, "theorem:complete-connected")
        chi.set_not_colourable("theorem:complete-not-colourable")
        ind.lower_upper(1, "theorem:complete-independence")
        w = CliqueWitness(eye)
        _accept(cl, n, "witness:identity-isometry", w, check_clique(G, w, tol))
        return
    # symmetric / antisymmetric
    ind.lower_upper(1, "theorem:sym-asym-independence")
    cl.lower_upper(half, "theorem:sym-asym-clique")
    w = clique_symasym(n)
    _accept(cl, half, "witness:symasym-isometry", w, check_clique(G, w, tol))
    if kind == "sym":
        comp.lower_upper(1, "theorem:sym-connected")
        if n == 2:
            w = ColouringWitness(gasym_n2_components().projectors)
            _accept(chi, 2, "witness:circular-basis", w, check_colouring(G, w, tol))
        else:
            chi.set_not_colourable("theorem:sym-not-colourable")
        return
    chi.raise_lower(n, "theorem:asym-chromatic")
    w = colouring_from_classical([[i] for i in range(n)], n)
    _accept(chi, n, "witness:coordinate-singletons", w, check_colouring(G, w, tol))
    if n == 2:
        w = gasym_n2_components()
        _accept(comp, 2, "witness:circular-basis", w, check_components(G, w, tol))
        comp.lower_upper(2, "bound:at-most-n-projectors")
    else:
        comp.lower_upper(1, "theorem:asym-connected-n3")
