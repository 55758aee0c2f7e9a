"""Pattern scripts, expansion generation, canonical codes, and scoring."""

import itertools
import random

import networkx as nx
import pytest

from topkpatterns import (CapacityError, ParameterError, Pattern,
                          backward_expansions, complete_interestingness,
                          forward_expansions, interestingness, seed_pattern)
from topkpatterns.pattern import BACKWARD, FORWARD, SEED, ExtensionStep

from conftest import brute_isomorphic


def pattern_from_graph(labels, edges):
    """Express an arbitrary connected labeled graph as an expansion script."""
    n = len(labels)
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    order = [0]
    placed = {0}
    parent = {}
    while len(order) < n:
        nxt = next(i for i in range(n) if i not in placed and adj[i] & placed)
        parent[nxt] = min(adj[nxt] & placed)
        order.append(nxt)
        placed.add(nxt)
    pos = {v: i for i, v in enumerate(order)}
    steps = [ExtensionStep(SEED, 0, 1, labels[order[1]])]
    tree_edges = {(min(order[0], order[1]), max(order[0], order[1]))}
    for idx in range(2, n):
        v = order[idx]
        steps.append(ExtensionStep(FORWARD, pos[parent[v]], idx, labels[v]))
        tree_edges.add((min(v, parent[v]), max(v, parent[v])))
    for a, b in edges:
        key = (min(a, b), max(a, b))
        if key not in tree_edges:
            i, j = sorted((pos[a], pos[b]))
            steps.append(ExtensionStep(BACKWARD, i, j))
    return Pattern(tuple(labels[v] for v in order), tuple(steps))


def random_connected_graph(rng, n, n_labels=2):
    labels = [rng.randrange(n_labels) for _ in range(n)]
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    extra = rng.randrange(0, n)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)
             if (a, b) not in edges]
    rng.shuffle(pairs)
    edges += pairs[:extra]
    return labels, edges


class TestSeedPattern:
    def test_basic(self):
        p = seed_pattern(0, 1)
        assert p.node_labels == (0, 1)
        assert p.edges == ((0, 1),)

    def test_orientation_normalized(self):
        assert seed_pattern(1, 0).canonical_code() == seed_pattern(0, 1).canonical_code()

    def test_same_label(self):
        p = seed_pattern(3, 3)
        assert p.node_labels == (3, 3)


class TestInterestingness:
    def test_triangle(self):
        p = seed_pattern(0, 1).extend_forward(0, 2).extend_backward(1, 2)
        assert interestingness(p) == 6

    def test_four_nodes_four_edges(self):
        p = (seed_pattern(0, 1).extend_forward(1, 2).extend_forward(2, 3)
             .extend_backward(0, 3))
        assert interestingness(p) == 8

    def test_complete_four(self):
        p = (seed_pattern(0, 1).extend_forward(1, 2).extend_forward(2, 3)
             .extend_backward(0, 2).extend_backward(0, 3).extend_backward(1, 3))
        assert interestingness(p) == 10

    def test_single_edge(self):
        assert interestingness(seed_pattern(0, 0)) == 3

    def test_strictly_increases_along_expansions(self):
        p = seed_pattern(0, 1)
        for step in range(4):
            q = p.extend_forward(0, 1)
            assert interestingness(q) > interestingness(p)
            p = q


class TestCompleteInterestingness:
    @pytest.mark.parametrize("n,expect", [(2, 3), (4, 10), (6, 21)])
    def test_values(self, n, expect):
        assert complete_interestingness(n) == expect

    def test_too_small(self):
        with pytest.raises(ParameterError):
            complete_interestingness(1)


class TestScriptReplay:
    def test_step_counts(self):
        rng = random.Random(11)
        for _ in range(100):
            labels, edges = random_connected_graph(rng, rng.randrange(2, 7))
            p = pattern_from_graph(labels, edges)
            forward = sum(s.kind == FORWARD for s in p.steps)
            backward = sum(s.kind == BACKWARD for s in p.steps)
            assert forward == p.n_nodes - 2
            assert backward == p.n_edges - p.n_nodes + 1
            assert len(p.edges) == len(edges)

    def test_bad_scripts_rejected(self):
        with pytest.raises(ParameterError):
            Pattern((0, 1), (ExtensionStep(FORWARD, 0, 1, 1),))
        with pytest.raises(ParameterError):
            seed_pattern(0, 1).extend_backward(0, 1)  # duplicate edge
        with pytest.raises(ParameterError):
            Pattern((0, 1, 2), (ExtensionStep(SEED, 0, 1, 1),
                                ExtensionStep(FORWARD, 3, 2, 2),))

    def test_parent_inverts_extension(self, q1, q2):
        assert q2.parent().canonical_code() == q1.canonical_code()
        with pytest.raises(ParameterError):
            seed_pattern(0, 1).parent()


class TestForwardExpansions:
    def test_seed_to_star(self, fig3_labels, q1):
        L = fig3_labels
        seeds = {tuple(sorted(p)) for p in
                 [(L["A"], L["B"]), (L["A"], L["C"]), (L["C"], L["D"])]}
        cands = forward_expansions(seed_pattern(L["A"], L["B"]), seeds)
        assert q1.canonical_code() in {c.canonical_code() for c in cands}

    def test_star_to_tail(self, fig3_labels, q1, q2):
        L = fig3_labels
        seeds = {tuple(sorted(p)) for p in
                 [(L["A"], L["B"]), (L["A"], L["C"]), (L["C"], L["D"])]}
        cands = forward_expansions(q1, seeds)
        assert q2.canonical_code() in {c.canonical_code() for c in cands}

    def test_output_deduplicated(self, fig3_labels):
        L = fig3_labels
        seeds = {tuple(sorted(p)) for p in
                 [(L["A"], L["B"]), (L["A"], L["C"]), (L["C"], L["D"])]}
        cands = forward_expansions(seed_pattern(L["C"], L["D"]), seeds)
        codes = [c.canonical_code() for c in cands]
        assert len(codes) == len(set(codes))
        assert codes == sorted(codes)

    def test_non_tree_rejected(self):
        tri = seed_pattern(0, 0).extend_forward(0, 0).extend_backward(1, 2)
        with pytest.raises(ParameterError):
            forward_expansions(tri, {(0, 0)})


class TestBackwardExpansions:
    def test_path_closes_to_triangle(self):
        path = seed_pattern(0, 1).extend_forward(1, 0)  # A-B-A
        cands = backward_expansions(path, {(0, 0)})
        assert len(cands) == 1
        assert cands[0].n_edges == 3

    def test_tail_pattern_has_no_frequent_closure(self, fig3_labels, q2):
        L = fig3_labels
        seeds = {tuple(sorted(p)) for p in
                 [(L["A"], L["B"]), (L["A"], L["C"]), (L["C"], L["D"])]}
        assert backward_expansions(q2, seeds) == []

    def test_complete_pattern_closed(self):
        tri = seed_pattern(0, 0).extend_forward(0, 0).extend_backward(1, 2)
        assert backward_expansions(tri, {(0, 0)}) == []

    def test_two_node_pattern(self):
        assert backward_expansions(seed_pattern(0, 1), {(0, 1)}) == []


class TestCanonicalCode:
    def test_isomorphic_constructions(self):
        # path A-B-C built from either end
        p = seed_pattern(0, 1).extend_forward(1, 2)
        q = seed_pattern(1, 2).extend_forward(_index_of(seed_pattern(1, 2), 1), 0)
        assert p.canonical_code() == q.canonical_code()

    def test_triangle_differs_from_path(self):
        path = seed_pattern(0, 1).extend_forward(1, 2)
        tri = path.extend_backward(0, 2)
        assert path.canonical_code() != tri.canonical_code()

    def test_limit_enforced(self):
        p = seed_pattern(0, 0)
        for _ in range(4):
            p = p.extend_forward(0, 0)
        with pytest.raises(CapacityError):
            p.canonical_code(limit=5)

    def test_matches_brute_force_isomorphism(self):
        rng = random.Random(202)
        for trial in range(1000):
            n = 6
            labels, edges = random_connected_graph(rng, n)
            p = pattern_from_graph(labels, edges)
            if trial % 2 == 0:
                # a relabeled copy of the same graph: codes must agree
                perm = list(range(n))
                rng.shuffle(perm)
                labels2 = [0] * n
                for old, new in enumerate(perm):
                    labels2[new] = labels[old]
                edges2 = [(perm[a], perm[b]) for a, b in edges]
                q = pattern_from_graph(labels2, edges2)
            else:
                labels2, edges2 = random_connected_graph(rng, n)
                q = pattern_from_graph(labels2, edges2)
            assert (p.canonical_code() == q.canonical_code()) == brute_isomorphic(p, q)


def _index_of(p, label):
    return p.node_labels.index(label)


def test_every_small_pattern_reachable():
    """Forward growth from a seed edge plus cycle closure reaches every
    connected labeled graph up to 6 nodes over 2 labels."""
    limit = 6
    all_pairs = {(0, 0), (0, 1), (1, 1)}
    reachable = set()
    queue = [seed_pattern(*p) for p in all_pairs]
    while queue:
        p = queue.pop()
        code = p.canonical_code()
        if code in reachable:
            continue
        reachable.add(code)
        if p.is_tree() and p.n_nodes < limit:
            queue.extend(forward_expansions(p, all_pairs))
        queue.extend(backward_expansions(p, all_pairs))

    missing = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < 2 or n > limit or not nx.is_connected(g):
            continue
        nodes = sorted(g.nodes())
        edges = [(nodes.index(a), nodes.index(b)) for a, b in g.edges()]
        for labeling in itertools.product((0, 1), repeat=n):
            p = pattern_from_graph(list(labeling), edges)
            if p.canonical_code() not in reachable:
                missing.append(p)
    assert not missing
