import numpy as np
import pytest

from qgw.abcgraphs import ABCParams, RandomProfile, abc_disjoint_union, b_part, random_abc
from qgw.numlin import random_isometry
from qgw.witness import ComponentWitness, coordinate_projector

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    """Store and print one acceptance line."""
    ACCEPTANCE_RESULTS[criterion] = (ok, detail)
    print(f"[acceptance {criterion:2d}] {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_profile(rng: np.random.Generator, n: int, loopless: bool | None = None) -> RandomProfile:
    pc = float(rng.uniform(0, 0.6))
    ps = float(rng.uniform(0, 1 - pc))
    if loopless is None:
        loopless = bool(rng.random() < 0.7)
    low, high = (0, n - 1) if loopless else (1, n)
    return RandomProfile(pc, ps, int(rng.integers(low, high + 1)), loopless)


def random_instance(seed: int, n_range=(2, 6), loopless: bool | None = None):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    return random_abc(n, rng, random_profile(rng, n, loopless))


def split_instance(rng):
    """Disjoint union of random pieces, so block-respecting witnesses can pass."""
    pieces = [random_abc(int(rng.integers(1, 4)), rng, RandomProfile(0.3, 0.4, 0)) for _ in range(int(rng.integers(2, 4)))]
    p = pieces[0]
    for q in pieces[1:]:
        p = abc_disjoint_union(p, q)
    n = p.n
    offs = np.cumsum([0] + [q.n for q in pieces])
    mode = rng.choice(["zero", "block", "generic"])
    B = np.zeros((n, n))
    if mode == "generic":
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        r = int(rng.integers(1, n))
        B = Q[:, :r] @ Q[:, :r].T
    elif mode == "block":
        for a, b in zip(offs[:-1], offs[1:]):
            if b - a > 1:
                v = rng.standard_normal(b - a)
                v -= v.mean()
                B[a:b, a:b] = np.outer(v, v) / (v @ v)
    d = np.diag(np.diag(B))
    p = ABCParams(p.A - np.diag(np.diag(p.A)) + d, B, p.C - np.diag(np.diag(p.C)) + d)
    # coordinate witnesses always pass on the diagonal part, so an empty
    # strange part is the only way a rotated witness can fail there alone
    if rng.random() < 0.3:
        p = b_part(p)
    parts = [list(range(a, b)) for a, b in zip(offs[:-1], offs[1:])]
    return p, parts


def random_witness(rng, p, parts):
    n = p.n
    u = rng.random()
    if u < 0.3:
        return ComponentWitness([coordinate_projector(q, n) for q in parts])
    if u < 0.5:
        return ComponentWitness([coordinate_projector([v], n) for q in parts for v in q])
    U = random_isometry(n, n, rng) if u < 0.9 else np.eye(n)
    cut = int(rng.integers(1, n)) if n > 1 else 1
    P = U[:, :cut] @ U[:, :cut].conj().T
    return ComponentWitness([P, np.eye(n) - P]) if cut < n else ComponentWitness([np.eye(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
