"""Patterns as ordered expansion scripts, candidate generation and canonical codes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CapacityError, ParameterError

DEFAULT_NODE_LIMIT = 12

SEED = "seed"
FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class ExtensionStep:
    """One script entry.  `i` is the already-bound pattern-node index.

    seed:     creates nodes 0 and 1 (labels live on the pattern).
    forward:  creates node `j` (== node count before the step) with `label`,
              attached to node `i`.
    backward: adds edge (i, j) between two existing nodes.
    """
    kind: str
    i: int
    j: int
    label: int | None = None


class Pattern:
    """A small connected labeled pattern graph.

    Node indices follow discovery order: the seed step binds u0 and u1, the
    t-th forward step introduces node t+1.  Immutable; expansion returns a
    new Pattern.
    """

    __slots__ = ("node_labels", "steps", "edges", "_adj", "_code")

    def __init__(self, node_labels: tuple[int, ...], steps: tuple[ExtensionStep, ...]):
        self.node_labels = tuple(node_labels)
        self.steps = tuple(steps)
        edges = []
        seen = set()
        n = 2
        if not steps or steps[0].kind != SEED or len(self.node_labels) < 2:
            raise ParameterError("script must start with a seed step over two nodes")
        edges.append((0, 1))
        seen.add((0, 1))
        for step in steps[1:]:
            if step.kind == FORWARD:
                if step.i >= n or step.j != n:
                    raise ParameterError(f"bad forward step {step} at node count {n}")
                n += 1
                key = (min(step.i, step.j), step.j)
                edges.append(key)
                seen.add(key)
            elif step.kind == BACKWARD:
                key = (min(step.i, step.j), max(step.i, step.j))
                if step.i == step.j or step.i >= n or step.j >= n or key in seen:
                    raise ParameterError(f"bad backward step {step}")
                edges.append(key)
                seen.add(key)
            else:
                raise ParameterError(f"unexpected step kind {step.kind!r}")
        if n != len(self.node_labels):
            raise ParameterError("script node count disagrees with labels")
        self.edges = tuple(edges)
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = adj
        self._code: bytes | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.node_labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def label(self, i: int) -> int:
        return self.node_labels[i]

    def adjacent(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def is_tree(self) -> bool:
        return all(s.kind != BACKWARD for s in self.steps)

    def backward_steps(self) -> list[ExtensionStep]:
        return [s for s in self.steps if s.kind == BACKWARD]

    def introducing_step(self, idx: int) -> ExtensionStep:
        """The step that bound node `idx` (seed for 0/1, a forward step otherwise)."""
        if idx <= 1:
            return self.steps[0]
        return self.steps[idx - 1]

    def parent(self) -> "Pattern":
        """The pattern this one was expanded from (script minus its last step)."""
        if len(self.steps) == 1:
            raise ParameterError("a seed pattern has no parent")
        last = self.steps[-1]
        labels = self.node_labels[:-1] if last.kind == FORWARD else self.node_labels
        return Pattern(labels, self.steps[:-1])

    # -- expansion ---------------------------------------------------------

    def extend_forward(self, i: int, new_label: int) -> "Pattern":
        step = ExtensionStep(FORWARD, i, self.n_nodes, new_label)
        return Pattern(self.node_labels + (new_label,), self.steps + (step,))

    def extend_backward(self, i: int, j: int) -> "Pattern":
        step = ExtensionStep(BACKWARD, min(i, j), max(i, j))
        return Pattern(self.node_labels, self.steps + (step,))

    # -- identity ----------------------------------------------------------

    def canonical_code(self, limit: int = DEFAULT_NODE_LIMIT) -> bytes:
        if self._code is None:
            if self.n_nodes > limit:
                raise CapacityError(
                    f"pattern has {self.n_nodes} nodes, above the canonical-code limit {limit}")
            self._code = _canonical_code(self.node_labels, self._adj)
        return self._code

    def __repr__(self):
        return f"Pattern(labels={self.node_labels}, edges={self.edges})"


def seed_pattern(a: int, b: int) -> Pattern:
    """Two-node single-edge pattern, canonically oriented so label(u0) <= label(u1)."""
    lo, hi = (a, b) if a <= b else (b, a)
    return Pattern((lo, hi), (ExtensionStep(SEED, 0, 1, hi),))


def interestingness(pattern: Pattern) -> int:
    """Pattern size: node count plus edge count."""
    return pattern.n_nodes + pattern.n_edges


def complete_interestingness(n: int) -> int:
    """Size of the complete pattern on n nodes; upper-bounds every expansion."""
    if n < 2:
        raise ParameterError("a pattern has at least 2 nodes")
    return n + n * (n - 1) // 2


def _seed_partners(seeds: Iterable[tuple[int, int]], label: int) -> list[int]:
    out = set()
    for x, y in seeds:
        if x == label:
            out.add(y)
        if y == label:
            out.add(x)
    return sorted(out)


def forward_expansions(pattern: Pattern, seeds: set[tuple[int, int]],
                       node_limit: int = DEFAULT_NODE_LIMIT) -> list[Pattern]:
    """All one-node tree extensions whose new edge is itself a frequent seed pair.

    Deduplicated by canonical code; returned in ascending code order.
    """
    if not pattern.is_tree():
        raise ParameterError("forward expansion is defined on tree patterns")
    out: dict[bytes, Pattern] = {}
    for i in range(pattern.n_nodes):
        for b in _seed_partners(seeds, pattern.label(i)):
            cand = pattern.extend_forward(i, b)
            out.setdefault(cand.canonical_code(node_limit), cand)
    return [out[c] for c in sorted(out)]


def backward_expansions(pattern: Pattern, seeds: set[tuple[int, int]],
                        node_limit: int = DEFAULT_NODE_LIMIT) -> list[Pattern]:
    """All one-edge cycle-closing extensions gated by the frequent seed pairs."""
    if pattern.n_nodes < 3:
        return []
    out: dict[bytes, Pattern] = {}
    for i in range(pattern.n_nodes):
        for j in range(i + 1, pattern.n_nodes):
            if pattern.adjacent(i, j):
                continue
            pair = tuple(sorted((pattern.label(i), pattern.label(j))))
            if pair not in seeds:
                continue
            cand = pattern.extend_backward(i, j)
            out.setdefault(cand.canonical_code(node_limit), cand)
    return [out[c] for c in sorted(out)]


# -- canonical form ---------------------------------------------------------
#
# Minimum lexicographic vertex-placement code: place nodes one at a time; the
# key of position p is (label, indices of earlier positions adjacent to it).
# The code is the smallest key sequence over all placements, found by
# branch-and-bound.  Codes are equal iff the patterns are label-isomorphic.

def _canonical_code(labels: tuple[int, ...], adj: list[set[int]]) -> bytes:
    n = len(labels)
    # interchangeable "twin" nodes (same label, same neighborhood apart from
    # each other) collapse the search: one unused member per class is tried.
    twin = list(range(n))
    for a in range(n):
        for b in range(a + 1, n):
            if twin[b] == b and labels[a] == labels[b] and adj[a] - {b} == adj[b] - {a}:
                twin[b] = twin[a]

    order = sorted(range(n), key=lambda v: (labels[v], -len(adj[v]), v))
    best: list[tuple] | None = None
    perm: list[int] = []
    keys: list[tuple] = []
    used = [False] * n

    def rec(prefix_eq: bool) -> bool:
        """Extend the placement; prune against `best` while the current prefix
        equals best's prefix.  Returns True if best was replaced below here."""
        nonlocal best
        p = len(perm)
        if p == n:
            best = list(keys)
            return True
        updated = False
        seen_class = set()
        for v in order:
            if used[v]:
                continue
            if twin[v] in seen_class:
                continue
            seen_class.add(twin[v])
            key = (labels[v], tuple(q for q in range(p) if perm[q] in adj[v]))
            if best is not None and prefix_eq:
                if key > best[p]:
                    continue
                child_eq = key == best[p]
            else:
                child_eq = False
            used[v] = True
            perm.append(v)
            keys.append(key)
            if rec(child_eq):
                updated = True
                prefix_eq = True  # the new best shares our prefix
            keys.pop()
            perm.pop()
            used[v] = False
        return updated

    rec(False)
    assert best is not None
    parts = [f"{lab}:{','.join(map(str, back))}" for lab, back in best]
    return ";".join(parts).encode("ascii")
