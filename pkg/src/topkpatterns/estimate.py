"""Lower-bound support estimation for a candidate pattern.

Given a candidate Q_c, its parent's domain, a threshold and a revisit budget,
walk the data graph guided by the parent domain and collect full matches of
Q_c.  Every node recorded in the result domain is part of a verified match,
so the reported support never exceeds the exact one.
"""

from __future__ import annotations

import os
import random

from .domain import Domain, ValidityOverlay, support_of, valid_count
from .errors import ContractError
from .graph import DataGraph
from .pattern import BACKWARD, FORWARD, ExtensionStep, Pattern

# re-check every recorded binding against the pattern edges (slow, debug only)
VERIFY_MATCHES = bool(os.environ.get("MINER_VERIFY_MATCHES"))


def preliminary_prune(G: DataGraph, Q_c: Pattern, D_p: Domain,
                      e_x: ExtensionStep) -> ValidityOverlay:
    """Mark parent-domain nodes that provably cannot survive the new edge.

    Forward (u_i, u_j new): a column-i node with no neighbor labeled like u_j
    starts no match of Q_c.  Backward (u_i, u_j): the neighbor must moreover
    sit in column j, and the symmetric check prunes column j too.
    """
    overlay = ValidityOverlay(D_p.n_columns)
    if e_x.kind == FORWARD:
        lab = Q_c.label(e_x.j)
        for v in D_p.column(e_x.i):
            if not G.labeled_neighbors(v, lab):
                overlay.mark(e_x.i, v)
    else:
        for a, b in ((e_x.i, e_x.j), (e_x.j, e_x.i)):
            other = D_p.column_set(b)
            lab = Q_c.label(b)
            for v in D_p.column(a):
                if not any(w in other for w in G.labeled_neighbors(v, lab)):
                    overlay.mark(a, v)
    return overlay


def candidate_nodes(G: DataGraph, parent: Pattern, overlay: ValidityOverlay,
                    S_d: list[int], in_stack: set[int]) -> list[int]:
    """Graph nodes that can bind pattern node u_s, s = len(S_d), ascending.

    Follows the parent's forward step introducing u_s, drops nodes already
    bound (matches are injective), overlay-invalid nodes, and nodes breaking
    any parent backward edge between u_s and an already-bound node.
    """
    s = len(S_d)
    intro = parent.introducing_step(s)
    anchor = intro.i if intro.j == s else intro.j
    back = [st.i if st.j == s else st.j
            for st in parent.backward_steps()
            if (st.i == s and st.j < s) or (st.j == s and st.i < s)]
    out = []
    for w in G.labeled_neighbors(S_d[anchor], parent.label(s)):
        if w in in_stack or overlay.is_invalid(s, w):
            continue
        if all(G.has_edge(w, S_d[b]) for b in back):
            out.append(w)
    return out


def choose_node(H_c: list[int], D_c: Domain, S_d: list[int],
                c: int, m: int) -> tuple[int, bool] | None:
    """Pick the next node to bind for position len(S_d), or None to stop.

    Preference order: a node not yet in its target column (fresh ground);
    else, while the current stack still holds some node unseen by its column
    and at most m such picks were made at this level, a known node; else stop.
    Returns (node, counted_against_budget).
    """
    s = len(S_d)
    col = D_c.column_set(s)
    fresh = [v for v in H_c if v not in col]
    if fresh:
        return fresh[0], False
    if H_c and c < m and any(not D_c.contains(i, v) for i, v in enumerate(S_d)):
        return H_c[0], True
    return None


def expand_matches(G: DataGraph, Q_c: Pattern, D_c: Domain, S_d: list[int],
                   e_x: ExtensionStep, trace: list | None = None) -> int:
    """With the whole parent bound, try to complete matches over the new edge.

    Forward: every distinct correctly-labeled neighbor of S_d[i] closes one
    match.  Backward: the stack itself is a match iff the edge exists.
    Returns the number of matches recorded.
    """
    found = 0
    if e_x.kind == FORWARD:
        for w in G.labeled_neighbors(S_d[e_x.i], Q_c.label(e_x.j)):
            if w in S_d:
                continue
            if VERIFY_MATCHES:
                _assert_match(G, Q_c, S_d + [w])
            D_c.add(e_x.j, w)
            found += 1
        if found:
            for i, v in enumerate(S_d):
                D_c.add(i, v)
    else:
        if G.has_edge(S_d[e_x.i], S_d[e_x.j]):
            if VERIFY_MATCHES:
                _assert_match(G, Q_c, list(S_d))
            for i, v in enumerate(S_d):
                D_c.add(i, v)
            found = 1
    if trace is not None and found:
        trace.append(("expand", tuple(S_d), found))
    return found


def estimate_support(G: DataGraph, Q_c: Pattern, D_p: Domain, theta: int,
                     m: int, trace: list | None = None,
                     shuffle_rng: random.Random | None = None) -> tuple[int, Domain]:
    """Estimated (never over-stated) support of Q_c plus its domain.

    A result >= theta certifies Q_c frequent.  The scan over column-0 start
    nodes aborts once even a per-start success everywhere could no longer
    reach theta; the verdict "infrequent" stays valid but the number itself
    is then only a partial count.
    """
    parent = Q_c.parent()
    if D_p.n_columns != parent.n_nodes:
        raise ContractError(
            f"parent domain has {D_p.n_columns} columns, pattern parent has "
            f"{parent.n_nodes} nodes")
    e_x = Q_c.steps[-1]
    overlay = preliminary_prune(G, Q_c, D_p, e_x)
    if trace is not None:
        for i in range(D_p.n_columns):
            for v in sorted(overlay.invalid_set(i) & D_p.column_set(i)):
                trace.append(("prune", i, v))

    D_c = Domain(Q_c.n_nodes)
    counter = valid_count(D_p, overlay, 0)
    n_bind = parent.n_nodes

    def walk(S_d: list[int], in_stack: set[int]) -> None:
        c = 0
        tried: set[int] = set()
        while True:
            H_c = [v for v in candidate_nodes(G, parent, overlay, S_d, in_stack)
                   if v not in tried]
            if shuffle_rng is not None:
                shuffle_rng.shuffle(H_c)
            pick = choose_node(H_c, D_c, S_d, c, m)
            if pick is None:
                if trace is not None:
                    trace.append(("stop", tuple(S_d), "C"))
                return
            v, counted = pick
            if counted:
                c += 1
            tried.add(v)
            if trace is not None:
                trace.append(("choose", tuple(S_d), v, "B" if counted else "A"))
            S_d.append(v)
            in_stack.add(v)
            if len(S_d) == n_bind:
                expand_matches(G, Q_c, D_c, S_d, e_x, trace)
            else:
                walk(S_d, in_stack)
            in_stack.discard(v)
            S_d.pop()

    starts = D_p.column(0)
    if shuffle_rng is not None:
        starts = list(starts)
        shuffle_rng.shuffle(starts)
    for v0 in starts:
        if overlay.is_invalid(0, v0):
            continue
        counter -= 1
        walk([v0], {v0})
        if D_c.size(0) + counter < theta:
            if trace is not None:
                trace.append(("break", D_c.size(0), counter))
            break

    D_c.freeze()
    sup = support_of(D_c)
    return sup, D_c


def _assert_match(G: DataGraph, Q: Pattern, binding: list[int]) -> None:
    assert len(set(binding)) == len(binding), binding
    for i, v in enumerate(binding):
        assert G.label_of(v) == Q.label(i), (binding, i)
    for a, b in Q.edges:
        assert G.has_edge(binding[a], binding[b]), (binding, a, b)
