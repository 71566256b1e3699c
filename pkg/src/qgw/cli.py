"""Command-line interface: ``qgw {build,validate,analyze,strange,witness,table}``.

Exit codes: 0 success, 1 input error, 2 semantic failure (invalid graph or
rejected witness), 3 internal numerical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .abcgraphs import (
    ABCParams,
    HypParams,
    RandomProfile,
    build,
    canonical,
    classical_embedding,
    from_strange_graph,
    hyp_build,
    hyp_enumerate,
    random_abc,
    to_strange_graph,
    validate,
)
from .analysis import PARAMETERS, ParameterReport, analyze_graph, bounds_table
from .classical import ClassicalGraph, StrangeGraph, maximum_clique
from .constructions import (
    clique_bipartite,
    clique_complete_minus_one,
    clique_from_classical,
    clique_icpovm,
    clique_symasym,
    gasym_n2_components,
    is_connected_abc,
    strange_pi_matching,
    strange_pi_matching_witness,
)
from .errors import InputError, QGWError, ValidationError
from .fileio import (
    Instance,
    dumps,
    instance_from_json,
    instance_to_json,
    strange_graph_to_dot,
    strange_graph_to_json,
    witness_from_json,
    witness_to_json,
)
from .numlin import DEFAULT_TOL, J
from .qgraph import QuantumGraph, is_loopless, is_undirected
from .witness import (
    CliqueWitness,
    ColouringWitness,
    ComponentWitness,
    IndependenceWitness,
    check_clique,
    check_colouring,
    check_components,
    check_independent_set,
    random_clique_search,
    search_coordinate_colouring,
    search_coordinate_components,
    search_coordinate_independent,
)

EXIT_OK, EXIT_INPUT, EXIT_SEMANTIC, EXIT_INTERNAL = 0, 1, 2, 3
BUILD_KINDS = ("empty", "complete", "sym", "asym", "hyp", "classical", "diagonal", "pi-matching", "random", "abc")
CONSTRUCT_KINDS = (
    "components", "colouring", "independent", "icpovm", "bipartite", "symasym",
    "complete-minus-one", "classical-clique", "gasym-n2", "pi-matching", "random-clique",
)
CHECKERS = {
    "components": (ComponentWitness, check_components),
    "colouring": (ColouringWitness, check_colouring),
    "independent": (IndependenceWitness, check_independent_set),
    "clique": (CliqueWitness, check_clique),
}


def resolve_tol(flag: float | None) -> float:
    """``--tol`` wins over ``QGW_TOL``, which wins over the default."""
    if flag is not None:
        tol = flag
    elif os.environ.get("QGW_TOL"):
        try:
            tol = float(os.environ["QGW_TOL"])
        except ValueError as exc:
            raise InputError(f"QGW_TOL is not a number: {os.environ['QGW_TOL']!r}") from exc
    else:
        tol = DEFAULT_TOL
    if not (tol > 0 and np.isfinite(tol)):
        raise InputError(f"tolerance must be positive, got {tol}")
    return tol


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _graph_of(inst: Instance, tol: float) -> QuantumGraph:
    if inst.abc is not None:
        return build(inst.abc, tol)
    return QuantumGraph(inst.projector, tol)


def _parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        try:
            i, j = tok.split("-")
            edges.append((int(i), int(j)))
        except ValueError as exc:
            raise InputError(f"bad edge {tok!r}; use 'i-j' separated by commas") from exc
    return edges


def _abc_instance(p: ABCParams, name: str) -> Instance:
    return Instance("abc", p.n, abc=p, name=name)


def _need_n(args: argparse.Namespace) -> int:
    if args.n is None:
        raise InputError(f"build {args.kind} needs --n")
    if args.n < 1:
        raise InputError("--n must be positive")
    return args.n


def cmd_build(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind in ("empty", "complete", "sym", "asym"):
        inst = _abc_instance(canonical(kind, _need_n(args)), kind)
    elif kind == "hyp":
        n = _need_n(args)
        if args.enumerate:
            docs = []
            for entry in hyp_enumerate(n):
                doc = instance_to_json(Instance("hyp", n, abc=hyp_build(entry.params), hyp=entry.params))
                doc["loopless"] = entry.loopless
                docs.append(doc)
            _emit(dumps(docs), args.out)
            return EXIT_OK
        vals = [args.a, args.a_prime, args.b, args.c]
        if any(v is None for v in vals):
            raise InputError("build hyp needs --a --a-prime --b --c (or --enumerate)")
        h = HypParams(n, *vals)
        inst = Instance("hyp", n, abc=hyp_build(h), hyp=h)
    elif kind == "classical":
        n = _need_n(args)
        g = ClassicalGraph.from_edges(n, _parse_edges(args.edges or ""))
        inst = Instance("classical", n, abc=classical_embedding(g), classical=g)
    elif kind == "diagonal":
        n = _need_n(args)
        B = np.eye(n) - J(n) / n
        d = np.diag(np.diag(B))
        inst = _abc_instance(ABCParams(d, B, d), "diagonal")
    elif kind == "pi-matching":
        inst = _abc_instance(strange_pi_matching(_need_n(args)), "pi-matching")
    elif kind == "random":
        profile = RandomProfile(args.p_classical, args.p_strange, args.b_rank, not args.with_loops)
        inst = _abc_instance(random_abc(_need_n(args), args.seed, profile), f"random-seed{args.seed}")
    elif kind == "abc":
        if not args.file:
            raise InputError("build abc needs --file")
        inst = instance_from_json(_load_json(args.file))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown kind {kind}")
    if inst.abc is not None and not validate(inst.abc, resolve_tol(args.tol)).quantum_graph:
        rep = validate(inst.abc, resolve_tol(args.tol))
        raise InputError("parameters do not define a quantum graph: " + "; ".join(rep.reasons))
    _emit(dumps(instance_to_json(inst)), args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    tol = resolve_tol(args.tol)
    inst = instance_from_json(_load_json(args.file), tol)
    if inst.abc is not None:
        rep = validate(inst.abc, tol).to_dict()
    else:
        try:
            G = QuantumGraph(inst.projector, tol)
            rep = {"quantum_graph": True, "undirected": is_undirected(G, tol), "loopless": is_loopless(G, tol),
                   "reasons": [], "bad_blocks": []}
        except ValidationError as exc:
            rep = {"quantum_graph": False, "undirected": False, "loopless": False,
                   "reasons": [str(exc)], "bad_blocks": [], "residuals": exc.report}
    sys.stdout.write(dumps(rep))
    return EXIT_OK if rep["quantum_graph"] else EXIT_SEMANTIC


def _report_json(rep: ParameterReport, witness_dir: str | None, stem: str) -> dict:
    doc = rep.to_dict()
    for name, b in rep.bounds().items():
        entry = doc["parameters"][name]
        if b.status == "exact" and b.witness is not None:
            wdoc = witness_to_json(b.witness, rep.n)
            if witness_dir:
                Path(witness_dir).mkdir(parents=True, exist_ok=True)
                path = Path(witness_dir) / f"{stem}.{name}.json"
                path.write_text(dumps(wdoc))
                entry["witness_file"] = str(path)
                entry["witness_kind"] = wdoc["type"]
            else:
                entry["witness"] = wdoc
    return doc


def cmd_analyze(args: argparse.Namespace) -> int:
    tol = resolve_tol(args.tol)
    inst = instance_from_json(_load_json(args.file), tol)
    if inst.abc is not None:
        rep = bounds_table(inst.abc, tol, args.seed, args.trials, args.exact_max_n)
    else:
        rep = analyze_graph(QuantumGraph(inst.projector, tol), tol, args.seed, args.trials, args.exact_max_n)
    doc = _report_json(rep, args.witness_dir, Path(args.file).stem)
    doc["seed"] = args.seed
    doc["tolerance"] = tol
    _emit(dumps(doc), args.out)
    return EXIT_OK


def cmd_strange(args: argparse.Namespace) -> int:
    tol = resolve_tol(args.tol)
    inst = instance_from_json(_load_json(args.file), tol)
    if inst.abc is None:
        raise InputError("strange graphs are defined for ABC-family instances")
    sg = to_strange_graph(inst.abc, tol)
    text = strange_graph_to_dot(sg) if args.format == "dot" else dumps(strange_graph_to_json(sg))
    _emit(text, args.out)
    return EXIT_OK


def _construct(kind: str, inst: Instance, G: QuantumGraph, args: argparse.Namespace, tol: float):
    n = inst.n
    if kind == "components":
        if inst.abc is not None:
            v = is_connected_abc(inst.abc, tol)
            if v.witness is not None:
                return v.witness
        return search_coordinate_components(G, tol=tol)
    if kind == "colouring":
        return search_coordinate_colouring(G, tol=tol)
    if kind == "independent":
        return search_coordinate_independent(G, tol=tol)
    if kind == "icpovm":
        return clique_icpovm(n, tol)
    if kind == "bipartite":
        return clique_bipartite(n)
    if kind == "symasym":
        return clique_symasym(n)
    if kind == "complete-minus-one":
        return clique_complete_minus_one(n)
    if kind == "classical-clique":
        if inst.classical is None:
            raise InputError("classical-clique needs a classical instance")
        return clique_from_classical(inst.classical, maximum_clique(inst.classical))
    if kind == "gasym-n2":
        return gasym_n2_components()
    if kind == "pi-matching":
        return strange_pi_matching_witness(n)
    if kind == "random-clique":
        if args.k is None:
            raise InputError("random-clique needs --k")
        return random_clique_search(G, args.k, args.trials, args.seed, tol)
    raise InputError(f"unknown construction {kind}")  # pragma: no cover


def cmd_witness(args: argparse.Namespace) -> int:
    tol = resolve_tol(args.tol)
    inst = instance_from_json(_load_json(args.file), tol)
    G = _graph_of(inst, tol)
    if args.action == "check":
        if not args.witness_file:
            raise InputError("witness check needs a witness file")
        if args.kind not in CHECKERS:
            raise InputError(f"cannot check kind {args.kind!r}; expected one of {sorted(CHECKERS)}")
        wdoc = _load_json(args.witness_file)
        w = witness_from_json(wdoc)
        if wdoc.get("type") != args.kind:
            raise InputError(f"witness file holds a {wdoc.get('type')!r} witness, not {args.kind!r}")
        _, checker = CHECKERS[args.kind]
        ok = checker(G, w, tol)
        sys.stdout.write(dumps({"kind": args.kind, "accepted": ok}))
        return EXIT_OK if ok else EXIT_SEMANTIC
    w = _construct(args.kind, inst, G, args, tol)
    if w is None:
        sys.stdout.write(dumps({"kind": args.kind, "found": False}))
        return EXIT_SEMANTIC
    _emit(dumps(witness_to_json(w, inst.n)), args.out)
    return EXIT_OK


def table_instances(n: int) -> list[tuple[str, ABCParams]]:
    """Representative instance for each row of the summary table."""
    B = np.eye(n) - J(n) / n
    path = ClassicalGraph.path(n)
    strange_path = StrangeGraph(n, frozenset(), {(i, i + 1): np.pi / 3 for i in range(n - 1)})
    xa = classical_embedding(path)
    d = np.diag(np.diag(B))
    xab = ABCParams(np.asarray(path.adjacency, float) + d, B, d)
    return [
        ("K̄_n", canonical("empty", n)),
        ("K_n", canonical("complete", n)),
        ("G^sym", canonical("sym", n)),
        ("G^asym", canonical("asym", n)),
        ("X_{A,·} (A = path)", xa),
        ("X_{·,B} (B = I - J/n)", ABCParams(d, B, d)),
        ("X_{A,B} (path, I - J/n)", xab),
        ("X_{A,·,C} (strange path, θ=π/3)", from_strange_graph(strange_path)),
        ("X_{A,B,C} (strange path, I - J/n)", from_strange_graph(strange_path, B)),
    ]


def cmd_table(args: argparse.Namespace) -> int:
    if not 2 <= args.n <= 8:
        raise InputError("table supports 2 <= N <= 8")
    tol = resolve_tol(args.tol)
    rows = []
    for label, p in table_instances(args.n):
        rep = bounds_table(p, tol, args.seed, args.trials)
        rows.append((label, rep))
    if args.format == "json":
        doc = {"n": args.n, "rows": [dict(graph=label, **rep.to_dict()) for label, rep in rows]}
        _emit(dumps(doc), args.out)
        return EXIT_OK
    head = ["graph", "family", "edges", "components", "χ", "α", "ω"]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for label, rep in rows:
        cells = [label, rep.family, str(rep.edges)] + [rep.bounds()[p].describe() for p in PARAMETERS]
        lines.append("| " + " | ".join(cells) + " |")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgw", description="Quantum graphs on M_n: build, validate, analyze.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="numerical tolerance (env QGW_TOL; default 1e-8)")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write an instance file")
    b.add_argument("kind", choices=BUILD_KINDS)
    b.add_argument("--n", type=int)
    b.add_argument("--a", type=float)
    b.add_argument("--a-prime", type=float)
    b.add_argument("--b", type=float)
    b.add_argument("--c", type=float)
    b.add_argument("--enumerate", action="store_true", help="hyp: write all 16 quantum graphs")
    b.add_argument("--edges", help="classical: edges as 'i-j,k-l' (0-based)")
    b.add_argument("--file", help="abc: JSON instance to canonicalize")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--p-classical", type=float, default=0.3)
    b.add_argument("--p-strange", type=float, default=0.3)
    b.add_argument("--b-rank", type=int, default=0)
    b.add_argument("--with-loops", action="store_true", help="random: allow B 1 != 0")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("validate", parents=[common], help="check the quantum-graph axioms")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", parents=[common], help="bounds on graph parameters with witnesses")
    a.add_argument("file")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--trials", type=int, default=20)
    a.add_argument("--exact-max-n", type=int, default=12)
    a.add_argument("--witness-dir", default=None, help="write witness files here instead of inlining them")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("strange", parents=[common], help="render the strange graph")
    s.add_argument("file")
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.set_defaults(func=cmd_strange)

    w = sub.add_parser("witness", parents=[common], help="check or construct witnesses")
    w.add_argument("action", choices=("check", "construct"))
    w.add_argument("kind", choices=sorted(set(CHECKERS) | set(CONSTRUCT_KINDS)))
    w.add_argument("file")
    w.add_argument("witness_file", nargs="?")
    w.add_argument("--k", type=int)
    w.add_argument("--trials", type=int, default=100)
    w.add_argument("--seed", type=int, default=0)
    w.set_defaults(func=cmd_witness)

    t = sub.add_parser("table", parents=[common], help="summary table at dimension N")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--format", choices=("markdown", "json"), default="markdown")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--trials", type=int, default=20)
    t.set_defaults(func=cmd_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QGWError as exc:
        err = {"error": str(exc), "reason": type(exc).__name__}
        pair = getattr(exc, "pair", None)
        if pair is not None:
            err["pair"] = list(pair)
        report = getattr(exc, "report", None)
        if report is not None and hasattr(report, "to_dict"):
            err["report"] = report.to_dict()
        sys.stderr.write(dumps(err))
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
