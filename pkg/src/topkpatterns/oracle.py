"""Exact ground truth at desk scale: match enumeration, exact supports,
exhaustive frequent-set closure, exact top-k, and recall metrics."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, ContractError, ParameterError
from .graph import DataGraph
from .miner import MiningResult, mine_seed_edges
from .pattern import (Pattern, backward_expansions, forward_expansions,
                      interestingness)

MAX_PATTERN_NODES = 8
DEFAULT_STEP_CAP = 20_000_000


def _search_order(G: DataGraph, Q: Pattern) -> list[int]:
    """Pattern-node order for backtracking: most-constrained first, always
    connected to the already-ordered prefix."""
    n = Q.n_nodes
    cand_size = [len(G.label_index.get(Q.label(i), [])) for i in range(n)]
    start = min(range(n), key=lambda i: (cand_size[i], i))
    order = [start]
    placed = {start}
    while len(order) < n:
        frontier = [i for i in range(n) if i not in placed
                    and any(Q.adjacent(i, j) for j in placed)]
        nxt = min(frontier,
                  key=lambda i: (-sum(Q.adjacent(i, j) for j in placed),
                                 cand_size[i], i))
        order.append(nxt)
        placed.add(nxt)
    return order


def _backtrack(G: DataGraph, Q: Pattern, order: list[int], step_cap: int,
               emit, stop_first: bool, fixed: dict[int, int] | None = None) -> bool:
    """Shared exhaustive search.  Calls emit(binding) per match; returns True
    if stop_first and a match was found.  Raises CapacityError past step_cap."""
    n = Q.n_nodes
    binding: dict[int, int] = dict(fixed) if fixed else {}
    used = set(binding.values())
    steps = 0

    def candidates(i: int) -> list[int]:
        bound_nbrs = [binding[j] for j in range(n) if j in binding and Q.adjacent(i, j)]
        if bound_nbrs:
            lab = Q.label(i)
            base = min((G.labeled_neighbors(v, lab) for v in bound_nbrs), key=len)
            return [w for w in base
                    if all(G.has_edge(w, v) for v in bound_nbrs)]
        return G.label_index.get(Q.label(i), [])

    def rec(pos: int) -> bool:
        nonlocal steps
        if pos == len(order):
            emit(tuple(binding[i] for i in range(n)))
            return stop_first
        i = order[pos]
        if i in binding:
            return rec(pos + 1)
        for w in candidates(i):
            if w in used:
                continue
            steps += 1
            if steps > step_cap:
                raise CapacityError(
                    f"exhaustive search exceeded {step_cap} steps; use smaller inputs")
            binding[i] = w
            used.add(w)
            if rec(pos + 1):
                return True
            del binding[i]
            used.discard(w)
        return False

    return rec(0)


def enumerate_matches(G: DataGraph, Q: Pattern,
                      step_cap: int = DEFAULT_STEP_CAP) -> list[tuple[int, ...]]:
    """Every isomorphic embedding of Q, as tuples indexed by pattern node,
    sorted ascending.  Desk scale only."""
    if Q.n_nodes > MAX_PATTERN_NODES:
        raise CapacityError(
            f"pattern has {Q.n_nodes} nodes, oracle cap is {MAX_PATTERN_NODES}")
    out: list[tuple[int, ...]] = []
    _backtrack(G, Q, _search_order(G, Q), step_cap, out.append, stop_first=False)
    out.sort()
    return out


def exact_images(G: DataGraph, Q: Pattern,
                 step_cap: int = DEFAULT_STEP_CAP) -> list[set[int]]:
    """Exact per-pattern-node images, via one existence search per (node,
    candidate) pair instead of full enumeration."""
    if Q.n_nodes > MAX_PATTERN_NODES:
        raise CapacityError(
            f"pattern has {Q.n_nodes} nodes, oracle cap is {MAX_PATTERN_NODES}")
    n = Q.n_nodes
    degree = [len(Q._adj[i]) for i in range(n)]
    images: list[set[int]] = [set() for _ in range(n)]
    sink: list = []
    for i in range(n):
        order = [i] + [j for j in _search_order(G, Q) if j != i]
        # keep the prefix connected after forcing i first
        order = _reconnect(Q, order)
        for v in G.label_index.get(Q.label(i), []):
            if len(G.neighbors(v)) < degree[i]:
                continue
            if v in images[i]:
                continue
            if _backtrack(G, Q, order, step_cap, sink.append,
                          stop_first=True, fixed={i: v}):
                images[i].add(v)
                sink.clear()
    return images


def _reconnect(Q: Pattern, order: list[int]) -> list[int]:
    out = [order[0]]
    rest = order[1:]
    placed = {order[0]}
    while rest:
        pick = next((j for j in rest if any(Q.adjacent(j, p) for p in placed)), rest[0])
        rest.remove(pick)
        out.append(pick)
        placed.add(pick)
    return out


def exact_support(G: DataGraph, Q: Pattern, step_cap: int = DEFAULT_STEP_CAP) -> int:
    """Exact minimum image size."""
    return min(len(img) for img in exact_images(G, Q, step_cap))


@dataclass
class ExactResult:
    params: dict
    topk: list[tuple[Pattern, int]]
    frequent: list[tuple[Pattern, int]]

    def pattern_json(self, label_names, pattern, support):
        return {
            "nodes": [label_names.get(l, str(l)) for l in pattern.node_labels],
            "edges": [[a, b] for a, b in pattern.edges],
            "support": support,
            "interestingness": interestingness(pattern),
            "code": pattern.canonical_code().hex(),
        }


def exact_frequent_set(G: DataGraph, theta: int,
                       max_nodes: int = MAX_PATTERN_NODES,
                       cap: int | None = None,
                       step_cap: int = DEFAULT_STEP_CAP) -> list[tuple[Pattern, int]]:
    """Complete frequent set with exact supports, by exhaustive expansion
    closure from the frequent seeds (trees first, then cycle closures).

    Raises CapacityError once more than `cap` members are found."""
    seed_pairs, seeds = mine_seed_edges(G, theta)
    found: dict[bytes, tuple[Pattern, int]] = {}
    trees: list[Pattern] = []
    for p, d in seeds:
        sup = min(d.size(0), d.size(1))
        found[p.canonical_code()] = (p, sup)
        trees.append(p)
    _enforce_cap(found, cap)

    # grow all frequent trees level by level
    frontier = trees
    while frontier:
        nxt = []
        for p in frontier:
            if p.n_nodes >= max_nodes:
                continue
            for cand in forward_expansions(p, seed_pairs, max_nodes):
                code = cand.canonical_code()
                if code in found:
                    continue
                sup = exact_support(G, cand, step_cap)
                if sup >= theta:
                    found[code] = (cand, sup)
                    nxt.append(cand)
                    _enforce_cap(found, cap)
        frontier = nxt

    # close every frequent pattern under cycle-adding edges
    queue = [p for p, _ in found.values()]
    while queue:
        p = queue.pop(0)
        for cand in backward_expansions(p, seed_pairs, max_nodes):
            code = cand.canonical_code()
            if code in found:
                continue
            sup = exact_support(G, cand, step_cap)
            if sup >= theta:
                found[code] = (cand, sup)
                queue.append(cand)
                _enforce_cap(found, cap)

    out = sorted(found.items(), key=lambda kv: kv[0])
    return [ps for _, ps in out]


def _enforce_cap(found: dict, cap: int | None) -> None:
    if cap is not None and len(found) > cap:
        raise CapacityError(f"frequent set exceeded cap {cap}")


def exact_topk(G: DataGraph, theta: int, k: int,
               max_nodes: int = MAX_PATTERN_NODES,
               step_cap: int = DEFAULT_STEP_CAP) -> ExactResult:
    """Exact top-k by (interestingness desc, code asc) over the complete
    frequent set."""
    if theta < 1 or k < 1:
        raise ParameterError("theta and k must be >= 1")
    frequent = exact_frequent_set(G, theta, max_nodes, step_cap=step_cap)
    ranked = sorted(frequent,
                    key=lambda ps: (-interestingness(ps[0]), ps[0].canonical_code()))
    return ExactResult(params={"theta": theta, "k": k},
                       topk=ranked[:k], frequent=frequent)


def recall_metrics(approx: MiningResult, exact: ExactResult) -> tuple[float, float]:
    """(set_recall, itrs_ratio) of an approximate run against exact truth.

    set_recall: share of returned patterns that are genuinely frequent.
    itrs_ratio: returned interestingness sum over the exact optimum (the
    headline number; robust to tie choices in the exact top-k)."""
    if (approx.params.get("theta") != exact.params.get("theta")
            or approx.params.get("k") != exact.params.get("k")):
        raise ContractError("approximate and exact runs used different parameters")
    exact_codes = {p.canonical_code() for p, _ in exact.frequent}
    approx_codes = [p.canonical_code() for p, _ in approx.patterns]
    if approx_codes:
        set_recall = sum(c in exact_codes for c in approx_codes) / len(approx_codes)
    else:
        set_recall = 1.0 if not exact.frequent else 0.0
    approx_sum = sum(interestingness(p) for p, _ in approx.patterns)
    exact_sum = sum(interestingness(p) for p, _ in exact.topk)
    itrs_ratio = approx_sum / exact_sum if exact_sum else 1.0
    return set_recall, itrs_ratio
