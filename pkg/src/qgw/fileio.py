"""JSON formats for instances, witnesses and reports.

Complex numbers are ``[re, im]`` pairs, matrices are row-major nested lists,
keys are sorted.  Floats are written with ``repr``, the shortest string that
round-trips to the same double, so files reload bit-exactly.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .abcgraphs import ABCParams, HypParams, abc_projector, classical_embedding, hyp_build
from .classical import ClassicalGraph, StrangeGraph
from .errors import InputError
from .qgraph import QuantumGraph
from .witness import CliqueWitness, ColouringWitness, ComponentWitness, IndependenceWitness

__all__ = [
    "encode_matrix",
    "decode_matrix",
    "dumps",
    "instance_to_json",
    "instance_from_json",
    "Instance",
    "witness_to_json",
    "witness_from_json",
    "strange_graph_to_json",
    "strange_graph_to_dot",
]

INSTANCE_KINDS = ("abc", "hyp", "classical", "projector")
WITNESS_KINDS = ("components", "colouring", "independent", "clique")


def encode_matrix(M: np.ndarray) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(data: Any, name: str = "matrix") -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: expected nested [re, im] arrays") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise InputError(f"{name}: expected shape (rows, cols, 2), got {arr.shape}")
    out = arr[..., 0] + 1j * arr[..., 1]
    if not np.all(np.isfinite(out)):
        raise InputError(f"{name}: non-finite entries")
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON text."""
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=False) + "\n"


class Instance:
    """A parsed instance file: its kind, payload, and derived objects."""

    def __init__(self, kind: str, n: int, abc: ABCParams | None = None, graph: QuantumGraph | None = None,
                 hyp: HypParams | None = None, classical: ClassicalGraph | None = None,
                 projector: np.ndarray | None = None, name: str | None = None) -> None:
        self.kind = kind
        self.n = n
        self.abc = abc
        self.hyp = hyp
        self.classical = classical
        self.projector = projector
        self.name = name

    def projector_matrix(self) -> np.ndarray:
        if self.abc is not None:
            return abc_projector(self.abc).matrix
        return np.asarray(self.projector)


def instance_to_json(inst: Instance) -> dict:
    doc: dict[str, Any] = {"n": inst.n, "kind": inst.kind}
    if inst.name:
        doc["name"] = inst.name
    if inst.kind == "abc":
        doc["A"] = encode_matrix(inst.abc.A)
        doc["B"] = encode_matrix(inst.abc.B)
        doc["C"] = encode_matrix(inst.abc.C)
    elif inst.kind == "hyp":
        h = inst.hyp
        doc.update({"a": h.a, "a_prime": h.a_prime, "b": h.b, "c": h.c})
    elif inst.kind == "classical":
        doc["edges"] = [list(e) for e in inst.classical.edges]
    elif inst.kind == "projector":
        doc["projector"] = encode_matrix(inst.projector)
    else:
        raise InputError(f"unknown instance kind {inst.kind!r}")
    return doc


def _require(doc: dict, key: str) -> Any:
    if key not in doc:
        raise InputError(f"instance file is missing the {key!r} field")
    return doc[key]


def instance_from_json(doc: Any, tol: float = 1e-8) -> Instance:
    """Parse an instance document.

    Raises
    ------
    InputError
        On any structural problem, including an ABC diagonal mismatch.
    """
    if not isinstance(doc, dict):
        raise InputError("instance file must contain a JSON object")
    kind = _require(doc, "kind")
    n = _require(doc, "n")
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    name = doc.get("name")
    if kind == "abc":
        A, B, C = (decode_matrix(_require(doc, k), k) for k in ("A", "B", "C"))
        if A.shape != (n, n):
            raise InputError(f"A must be {n}x{n}")
        return Instance(kind, n, abc=ABCParams(A, B, C, tol), name=name)
    if kind == "hyp":
        try:
            h = HypParams(n, *(float(_require(doc, k)) for k in ("a", "a_prime", "b", "c")))
        except (TypeError, ValueError) as exc:
            raise InputError("hyp parameters must be numbers") from exc
        return Instance(kind, n, abc=hyp_build(h), hyp=h, name=name)
    if kind == "classical":
        edges = _require(doc, "edges")
        try:
            g = ClassicalGraph.from_edges(n, [(int(i), int(j)) for i, j in edges])
        except (TypeError, ValueError) as exc:
            raise InputError("edges must be a list of vertex pairs") from exc
        return Instance(kind, n, abc=classical_embedding(g), classical=g, name=name)
    if kind == "projector":
        P = decode_matrix(_require(doc, "projector"), "projector")
        if P.shape != (n * n, n * n):
            raise InputError(f"projector must be {n*n}x{n*n}")
        return Instance(kind, n, projector=P, name=name)
    raise InputError(f"unknown instance kind {kind!r}; expected one of {INSTANCE_KINDS}")


def witness_to_json(w: Any, n: int) -> dict:
    if isinstance(w, ColouringWitness):
        return {"type": "colouring", "n": n, "projectors": [encode_matrix(P) for P in w.projectors]}
    if isinstance(w, ComponentWitness):
        return {"type": "components", "n": n, "projectors": [encode_matrix(P) for P in w.projectors]}
    if isinstance(w, IndependenceWitness):
        return {"type": "independent", "n": n, "P": encode_matrix(w.P)}
    if isinstance(w, CliqueWitness):
        return {"type": "clique", "n": n, "V": encode_matrix(w.V)}
    raise InputError(f"not a witness: {type(w).__name__}")


def witness_from_json(doc: Any):
    if not isinstance(doc, dict):
        raise InputError("witness file must contain a JSON object")
    t = doc.get("type")
    if t in ("components", "colouring"):
        projs = doc.get("projectors")
        if not isinstance(projs, list):
            raise InputError("witness needs a 'projectors' list")
        mats = [decode_matrix(P, "projector") for P in projs]
        return (ColouringWitness if t == "colouring" else ComponentWitness)(mats)
    if t == "independent":
        return IndependenceWitness(decode_matrix(doc.get("P"), "P"))
    if t == "clique":
        return CliqueWitness(decode_matrix(doc.get("V"), "V"))
    raise InputError(f"unknown witness type {t!r}; expected one of {WITNESS_KINDS}")


def strange_graph_to_json(sg: StrangeGraph) -> dict:
    return {
        "n": sg.n,
        "classical_edges": sorted([list(e) for e in sg.classical_edges]),
        "strange_edges": [[i, j, t] for (i, j), t in sorted(sg.strange_edges.items())],
    }


def strange_graph_to_dot(sg: StrangeGraph, name: str = "strange") -> str:
    """DOT rendering: classical edges solid, strange edges dashed with a phase label."""
    lines = [f"graph {name} {{"]
    for v in range(sg.n):
        lines.append(f"  {v};")
    for i, j in sorted(sg.classical_edges):
        lines.append(f"  {i} -- {j};")
    for (i, j), t in sorted(sg.strange_edges.items()):
        lines.append(f'  {i} -- {j} [style=dashed, label="θ={t:.4f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
