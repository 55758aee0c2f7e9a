"""Shared fixtures: the hand-built golden graph and brute-force reference code."""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from topkpatterns import DataGraph, Pattern, load_lg, seed_pattern

DATA_DIR = Path(__file__).parent / "data"
FIG3_PATH = DATA_DIR / "fig3.lg"


@pytest.fixture(scope="session")
def fig3() -> DataGraph:
    """12-node golden graph: two A hubs over B and C fans, two D leaves."""
    return load_lg(str(FIG3_PATH))


@pytest.fixture(scope="session")
def fig3_labels(fig3) -> dict[str, int]:
    return {name: fig3.label_id(name) for name in ("A", "B", "C", "D")}


@pytest.fixture(scope="session")
def q1(fig3_labels) -> Pattern:
    """Star u1(A) with leaves u0(B) and u2(C)."""
    L = fig3_labels
    return seed_pattern(L["A"], L["B"]).extend_forward(_a_index(L), L["C"])


@pytest.fixture(scope="session")
def q2(q1, fig3_labels) -> Pattern:
    """q1 plus a D leaf hanging off the C node."""
    return q1.extend_forward(2, fig3_labels["D"])


def _a_index(L: dict[str, int]) -> int:
    # seed orientation sorts by label id; find where A landed
    return 0 if L["A"] <= L["B"] else 1


@pytest.fixture(scope="session")
def q1_hub_first(fig3_labels) -> Pattern:
    """Same star as q1 but scripted with the A hub as u0 (the walk then
    starts from the hub column, matching the golden traversal narration)."""
    from topkpatterns.pattern import FORWARD, SEED, ExtensionStep
    L = fig3_labels
    return Pattern(
        (L["A"], L["B"], L["C"]),
        (ExtensionStep(SEED, 0, 1, L["B"]), ExtensionStep(FORWARD, 0, 2, L["C"])))


@pytest.fixture(scope="session")
def q2_hub_first(q1_hub_first, fig3_labels) -> Pattern:
    return q1_hub_first.extend_forward(2, fig3_labels["D"])


@pytest.fixture()
def d_q1_hub_first():
    """Exact domain of the hub-first star on the golden graph."""
    from topkpatterns import Domain
    return Domain.from_columns([{4, 5}, {0, 1, 2, 3}, {6, 7, 8, 9}])


# -- brute-force references ---------------------------------------------------

def brute_matches(G: DataGraph, Q: Pattern) -> list[tuple[int, ...]]:
    """All injective label- and edge-respecting bindings, by candidate product."""
    n = Q.n_nodes
    pools = [G.label_index.get(Q.label(i), []) for i in range(n)]
    out = []
    for binding in itertools.product(*pools):
        if len(set(binding)) != n:
            continue
        if all(G.has_edge(binding[a], binding[b]) for a, b in Q.edges):
            out.append(binding)
    out.sort()
    return out


def brute_images(G: DataGraph, Q: Pattern) -> list[set[int]]:
    images: list[set[int]] = [set() for _ in range(Q.n_nodes)]
    for binding in brute_matches(G, Q):
        for i, v in enumerate(binding):
            images[i].add(v)
    return images


def brute_support(G: DataGraph, Q: Pattern) -> int:
    return min(len(img) for img in brute_images(G, Q))


def brute_isomorphic(p: Pattern, q: Pattern) -> bool:
    """Label-respecting isomorphism by permutation search."""
    if p.n_nodes != q.n_nodes or p.n_edges != q.n_edges:
        return False
    if sorted(p.node_labels) != sorted(q.node_labels):
        return False
    n = p.n_nodes
    p_edges = {(min(a, b), max(a, b)) for a, b in p.edges}
    for perm in itertools.permutations(range(n)):
        if any(p.label(i) != q.label(perm[i]) for i in range(n)):
            continue
        mapped = {(min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in p_edges}
        if mapped == {(min(a, b), max(a, b)) for a, b in q.edges}:
            return True
    return False
