"""Immutable node-labeled undirected simple graph, .lg I/O and a synthetic generator."""

from __future__ import annotations

import io
import random
from typing import Iterable

from .errors import GraphParseError, GraphValidationError, ParameterError


class DataGraph:
    """A simple undirected graph with one categorical label per node.

    Node ids are dense integers 0..n-1.  Adjacency lists are kept sorted
    ascending and additionally grouped by neighbor label, so label-filtered
    neighbor queries are O(result size).  Instances are immutable after
    construction and safe for concurrent reads.
    """

    __slots__ = (
        "labels",
        "adjacency",
        "label_index",
        "label_names",
        "edge_count",
        "duplicate_edge_count",
        "_adj_sets",
        "_adj_by_label",
    )

    def __init__(self, labels: list[int], edges: Iterable[tuple[int, int]],
                 label_names: dict[int, str] | None = None):
        n = len(labels)
        self.labels = list(labels)
        adj_sets: list[set[int]] = [set() for _ in range(n)]
        dupes = 0
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u},{v}) references a node outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"self-loop on node {u} is not allowed")
            if v in adj_sets[u]:
                dupes += 1
                continue
            adj_sets[u].add(v)
            adj_sets[v].add(u)
            m += 1
        self.adjacency = [sorted(s) for s in adj_sets]
        self._adj_sets = adj_sets
        self.edge_count = m
        self.duplicate_edge_count = dupes

        index: dict[int, list[int]] = {}
        for v, lab in enumerate(self.labels):
            index.setdefault(lab, []).append(v)
        self.label_index = index

        by_label: list[dict[int, list[int]]] = []
        for v in range(n):
            groups: dict[int, list[int]] = {}
            for w in self.adjacency[v]:
                groups.setdefault(self.labels[w], []).append(w)
            by_label.append(groups)
        self._adj_by_label = by_label

        if label_names is None:
            label_names = {lab: str(lab) for lab in index}
        self.label_names = dict(label_names)

    @property
    def node_count(self) -> int:
        return len(self.labels)

    def label_of(self, v: int) -> int:
        return self.labels[v]

    def neighbors(self, v: int) -> list[int]:
        return self.adjacency[v]

    def labeled_neighbors(self, v: int, label: int) -> list[int]:
        """Neighbors of v carrying `label`, ascending."""
        return self._adj_by_label[v].get(label, _EMPTY)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def label_id(self, name: str) -> int:
        for lab, nm in self.label_names.items():
            if nm == name:
                return lab
        raise KeyError(name)

    def edges(self):
        for u in range(self.node_count):
            for v in self.adjacency[u]:
                if u < v:
                    yield u, v


_EMPTY: list[int] = []


def load_lg(source) -> DataGraph:
    """Parse a `.lg` graph.

    `source` may be a path, a text stream, or a byte stream.  Format, one
    record per line: `# comment`, optional `t # <id>` header, `v <id> <label>`
    (dense ids, in order), `e <src> <dst> [<edge-label>]`.  Edge labels are
    accepted and ignored; reversed duplicate edges are deduplicated and
    counted in `duplicate_edge_count`.
    """
    if isinstance(source, (str, bytes)) and not isinstance(source, bytes):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_lg(fh)
    if isinstance(source, bytes):
        return _parse_lg(io.StringIO(source.decode("utf-8")))
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return _parse_lg(io.StringIO(data))
    raise TypeError(f"unsupported source {type(source)!r}")


def _parse_lg(fh) -> DataGraph:
    labels: list[int] = []
    name_to_id: dict[str, int] = {}
    id_to_name: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    seen_edge = False
    for line_no, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "t":
            continue
        if kind == "v":
            if seen_edge:
                raise GraphParseError("v line after e lines", line_no)
            if len(parts) != 3:
                raise GraphParseError(f"malformed v line: {line!r}", line_no)
            try:
                vid = int(parts[1])
            except ValueError:
                raise GraphParseError(f"non-integer node id: {parts[1]!r}", line_no) from None
            if vid != len(labels):
                raise GraphParseError(f"node ids must be dense and in order, got {vid}", line_no)
            token = parts[2]
            if token not in name_to_id:
                lab = len(name_to_id)
                name_to_id[token] = lab
                id_to_name[lab] = token
            labels.append(name_to_id[token])
        elif kind == "e":
            if len(parts) not in (3, 4):
                raise GraphParseError(f"malformed e line: {line!r}", line_no)
            seen_edge = True
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"non-integer edge endpoint in {line!r}", line_no) from None
            if not (0 <= u < len(labels)) or not (0 <= v < len(labels)):
                raise GraphValidationError(
                    f"line {line_no}: edge ({u},{v}) references an undeclared node")
            edges.append((u, v))
        else:
            raise GraphParseError(f"unknown record type {kind!r}", line_no)
    return DataGraph(labels, edges, id_to_name)


def write_lg(graph: DataGraph, target) -> None:
    """Serialize `graph` to `.lg`; inverse of load_lg for graphs it produced."""
    if isinstance(target, str):
        with open(target, "w", encoding="utf-8") as fh:
            write_lg(graph, fh)
            return
    target.write("t # 0\n")
    for v in range(graph.node_count):
        target.write(f"v {v} {graph.label_names[graph.labels[v]]}\n")
    for u, v in graph.edges():
        target.write(f"e {u} {v} 0\n")


def generate_preferential(n_nodes: int, n_edges: int, n_labels: int, rng_seed: int) -> DataGraph:
    """Connected random graph; new edge endpoints drawn with probability
    proportional to (current degree + 1).  Deterministic for a fixed seed."""
    if n_nodes < 1 or n_labels < 1:
        raise ParameterError("n_nodes and n_labels must be positive")
    if n_edges < n_nodes - 1:
        raise ParameterError(f"need at least {n_nodes - 1} edges to connect {n_nodes} nodes")
    max_edges = n_nodes * (n_nodes - 1) // 2
    if n_edges > max_edges:
        raise ParameterError(f"{n_edges} edges exceed the simple-graph maximum {max_edges}")

    rng = random.Random(rng_seed)
    edges: set[tuple[int, int]] = set()
    # pool holds node i repeated deg(i)+1 times
    pool = [0]
    for v in range(1, n_nodes):
        u = rng.choice(pool)
        edges.add((min(u, v), max(u, v)))
        pool.append(u)
        pool.extend((v, v))

    stalls = 0
    while len(edges) < n_edges:
        u = rng.choice(pool)
        v = rng.choice(pool)
        key = (min(u, v), max(u, v))
        if u == v or key in edges:
            stalls += 1
            if stalls > 200:
                # near-complete graph: fall back to a deterministic scan
                missing = [(a, b) for a in range(n_nodes) for b in range(a + 1, n_nodes)
                           if (a, b) not in edges]
                for key in missing[: n_edges - len(edges)]:
                    edges.add(key)
                break
            continue
        stalls = 0
        edges.add(key)
        pool.append(u)
        pool.append(v)

    labels = [rng.randrange(n_labels) for _ in range(n_nodes)]
    return DataGraph(labels, sorted(edges))
