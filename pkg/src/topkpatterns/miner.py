"""End-to-end miner: seed scan, level-wise tree growth, cycle closure, top-k."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .domain import Domain, support_of
from .errors import ParameterError
from .estimate import estimate_support
from .graph import DataGraph
from .pattern import (DEFAULT_NODE_LIMIT, Pattern, backward_expansions,
                      complete_interestingness, forward_expansions,
                      interestingness, seed_pattern)


@dataclass
class TreeNode:
    """A frequent tree pattern with its frozen domain."""
    pattern: Pattern
    domain: Domain
    parent: "TreeNode | None"
    level: int
    expanded: bool = False


class PatternTree:
    """Frequent tree patterns grouped by level; level L patterns have L+2 nodes."""

    def __init__(self):
        self.levels: list[list[TreeNode]] = []

    @property
    def height(self) -> int:
        return len(self.levels)

    def add_level(self, nodes: list[TreeNode]) -> None:
        self.levels.append(nodes)

    def all_nodes(self):
        for level in self.levels:
            yield from level


class TopKState:
    """Accepted patterns ranked by (interestingness desc, canonical code asc)."""

    def __init__(self, k: int, theta: int, m: int):
        self.k = k
        self.theta = theta
        self.m = m
        self._pool: dict[bytes, tuple[Pattern, int, int]] = {}

    def admit(self, pattern: Pattern, support: int) -> None:
        code = pattern.canonical_code()
        if code not in self._pool:
            self._pool[code] = (pattern, support, interestingness(pattern))

    def __len__(self):
        return len(self._pool)

    def ranked(self) -> list[tuple[Pattern, int]]:
        order = sorted(self._pool.items(), key=lambda kv: (-kv[1][2], kv[0]))
        return [(p, s) for _, (p, s, _) in order]

    def top_k(self) -> list[tuple[Pattern, int]]:
        return self.ranked()[: self.k]

    def kth_interestingness(self) -> int | None:
        """Interestingness of the k-th ranked pattern, None while pool < k."""
        if len(self._pool) < self.k:
            return None
        top = sorted((v[2] for v in self._pool.values()), reverse=True)
        return top[self.k - 1]


@dataclass
class _Stats:
    frqchk_calls: int = 0
    candidates: int = 0
    domain_entries_peak: int = 0
    retained_entries: int = 0
    termination: str = "exhausted"

    def note_retained(self, domain: Domain) -> None:
        self.retained_entries += domain.total_entries()
        if self.retained_entries > self.domain_entries_peak:
            self.domain_entries_peak = self.retained_entries

    def note_transient(self, domain: Domain) -> None:
        peak = self.retained_entries + domain.total_entries()
        if peak > self.domain_entries_peak:
            self.domain_entries_peak = peak


@dataclass
class MiningResult:
    params: dict
    patterns: list[tuple[Pattern, int]]
    stats: dict
    label_names: dict[int, str] = field(default_factory=dict)

    def pattern_json(self, pattern: Pattern, support: int) -> dict:
        return {
            "nodes": [self.label_names.get(l, str(l)) for l in pattern.node_labels],
            "edges": [[a, b] for a, b in pattern.edges],
            "support": support,
            "interestingness": interestingness(pattern),
            "code": pattern.canonical_code().hex(),
        }

    def to_json(self, include_timing: bool = False) -> str:
        stats = dict(self.stats)
        if not include_timing:
            stats["wall_ms"] = 0
        doc = {
            "params": self.params,
            "patterns": [self.pattern_json(p, s) for p, s in self.patterns],
            "stats": stats,
        }
        return json.dumps(doc, indent=2) + "\n"


def mine_seed_edges(G: DataGraph, theta: int) -> tuple[set[tuple[int, int]],
                                                       list[tuple[Pattern, Domain]]]:
    """Frequent single-edge patterns with exact domains.

    For a label pair (a,b), the a-side image is every a-labeled node with at
    least one b-labeled neighbor (a distinct node even when a == b, since the
    graph has no self-loops).
    """
    if theta < 1:
        raise ParameterError("theta must be >= 1")
    images: dict[tuple[int, int], tuple[set[int], set[int]]] = {}
    for v in range(G.node_count):
        lv = G.label_of(v)
        for lw in G._adj_by_label[v]:
            a, b = (lv, lw) if lv <= lw else (lw, lv)
            if (a, b) not in images:
                images[(a, b)] = (set(), set())
            side = 0 if lv == a else 1
            images[(a, b)][side].add(v)
            if a == b:
                images[(a, b)][1].add(v)

    pairs: set[tuple[int, int]] = set()
    seeds: list[tuple[Pattern, Domain]] = []
    for (a, b) in sorted(images):
        img0, img1 = images[(a, b)]
        if min(len(img0), len(img1)) < theta:
            continue
        pairs.add((a, b))
        seeds.append((seed_pattern(a, b), Domain.from_columns([img0, img1])))
    return pairs, seeds


def grow_tree_levels(G: DataGraph, seeds: list[tuple[Pattern, Domain]],
                     seed_pairs: set[tuple[int, int]], theta: int, m: int,
                     stats: _Stats, seen: set[bytes],
                     node_limit: int = DEFAULT_NODE_LIMIT,
                     shuffle_rng: random.Random | None = None,
                     observer=None) -> PatternTree:
    """Level-wise growth: verify every one-node extension of the previous
    level against its parent's domain; stop the first level that admits
    nothing."""
    tree = PatternTree()
    if not seeds:
        return tree
    level = []
    for p, d in seeds:
        seen.add(p.canonical_code())
        stats.note_retained(d)
        level.append(TreeNode(p, d, None, 0))
    level.sort(key=lambda n: n.pattern.canonical_code())
    tree.add_level(level)

    while True:
        nxt: list[TreeNode] = []
        for node in tree.levels[-1]:
            if node.pattern.n_nodes >= node_limit:
                continue
            for cand in forward_expansions(node.pattern, seed_pairs, node_limit):
                code = cand.canonical_code()
                # a candidate rejected against one parent's domain is retried
                # from its other parents (their domains may certify it)
                if code in seen:
                    continue
                stats.candidates += 1
                sup, dom = estimate_support(G, cand, node.domain, theta, m,
                                            shuffle_rng=shuffle_rng)
                stats.frqchk_calls += 1
                stats.note_transient(dom)
                if observer is not None:
                    observer(cand, sup, dom)
                if sup >= theta:
                    seen.add(code)
                    stats.note_retained(dom)
                    nxt.append(TreeNode(cand, dom, node, len(tree.levels)))
        if not nxt:
            break
        nxt.sort(key=lambda n: n.pattern.canonical_code())
        tree.add_level(nxt)
    return tree


def termination_check(state: TopKState, unexpanded_sizes: dict[int, int]) -> bool:
    """True once no pattern derivable from an unexpanded tree pattern can beat
    the current k-th best; vacuously true with nothing left unexpanded."""
    alive = [n for n, cnt in unexpanded_sizes.items() if cnt > 0]
    if not alive:
        return True
    kth = state.kth_interestingness()
    if kth is None:
        return False
    return kth >= max(complete_interestingness(n) for n in alive)


def etsearch(G: DataGraph, tree: PatternTree, seed_pairs: set[tuple[int, int]],
             theta: int, k: int, m: int, stats: _Stats, seen: set[bytes],
             node_limit: int = DEFAULT_NODE_LIMIT,
             single_backward: bool = False,
             shuffle_rng: random.Random | None = None,
             observer=None) -> TopKState:
    """Top-down pass: pool each tree pattern, close it under frequent
    cycle-adding extensions, and stop early once the pool's k-th
    interestingness meets the best still reachable from unexpanded trees."""
    state = TopKState(k, theta, m)
    unexpanded: dict[int, int] = {}
    for node in tree.all_nodes():
        n = node.pattern.n_nodes
        unexpanded[n] = unexpanded.get(n, 0) + 1

    for level in reversed(tree.levels):
        for tnode in level:
            state.admit(tnode.pattern, support_of(tnode.domain))
            if termination_check(state, unexpanded):
                stats.termination = "bound"
                return state

            queue: list[tuple[Pattern, Domain]] = [(tnode.pattern, tnode.domain)]
            while queue:
                base, base_dom = queue.pop(0)
                for cand in backward_expansions(base, seed_pairs, node_limit):
                    code = cand.canonical_code()
                    if code in seen:
                        continue
                    stats.candidates += 1
                    sup, dom = estimate_support(G, cand, base_dom, theta, m,
                                                shuffle_rng=shuffle_rng)
                    stats.frqchk_calls += 1
                    stats.note_transient(dom)
                    if observer is not None:
                        observer(cand, sup, dom)
                    if sup < theta:
                        continue
                    seen.add(code)
                    stats.note_retained(dom)
                    state.admit(cand, sup)
                    if termination_check(state, unexpanded):
                        stats.termination = "bound"
                        return state
                    if not single_backward:
                        queue.append((cand, dom))

            tnode.expanded = True
            unexpanded[tnode.pattern.n_nodes] -= 1
            if termination_check(state, unexpanded):
                # distinguish the genuine bound from plain exhaustion
                if any(cnt > 0 for cnt in unexpanded.values()):
                    stats.termination = "bound"
                    return state
    stats.termination = "exhausted"
    return state


def mine_topk(G: DataGraph, theta: int, k: int, m: int,
              rng_seed: int | None = None,
              node_limit: int = DEFAULT_NODE_LIMIT,
              single_backward: bool = False,
              shuffle_candidates: bool = False,
              observer=None) -> MiningResult:
    """Full pipeline returning the ranked (approximate) top-k frequent patterns."""
    if theta < 1 or k < 1 or m < 1:
        raise ParameterError("theta, k and m must all be >= 1")
    shuffle_rng = random.Random(rng_seed) if shuffle_candidates else None

    t0 = time.perf_counter()
    stats = _Stats()
    seen: set[bytes] = set()
    seed_pairs, seeds = mine_seed_edges(G, theta)
    tree = grow_tree_levels(G, seeds, seed_pairs, theta, m, stats, seen,
                            node_limit, shuffle_rng, observer)
    state = etsearch(G, tree, seed_pairs, theta, k, m, stats, seen,
                     node_limit, single_backward, shuffle_rng, observer)
    wall_ms = int((time.perf_counter() - t0) * 1000)

    return MiningResult(
        params={"theta": theta, "k": k, "m": m, "seed": rng_seed},
        patterns=state.top_k(),
        stats={
            "frqchk_calls": stats.frqchk_calls,
            "candidates": stats.candidates,
            "domain_entries_peak": stats.domain_entries_peak,
            "wall_ms": wall_ms,
            "termination": stats.termination,
        },
        label_names=G.label_names,
    )
