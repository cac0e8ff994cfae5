"""Keyword co-occurrence matrices, collaboration edge lists and graph export."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

from .corpus import Corpus
from .keywords import KeywordGroup, shared_occurrence
from .metrics import document_entities, entity_documents

NETWORK_KINDS = ("country", "organization", "author")
FORMATS = ("graphml", "dot", "csv")


@dataclass(frozen=True)
class CooccurrenceMatrix:
    labels: tuple[str, ...]
    # keyed by label index pairs (i, j) with i <= j
    cells: dict[tuple[int, int], int]

    def count(self, a: str, b: str) -> int:
        i, j = sorted((self.labels.index(a), self.labels.index(b)))
        return self.cells.get((i, j), 0)

    def grid(self) -> list[list[int]]:
        n = len(self.labels)
        return [[self.cells.get((min(i, j), max(i, j)), 0) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class EdgeList:
    kind: str
    edges: tuple[tuple[str, str, int], ...]
    # publications per entity, including entities without edges
    node_weights: dict[str, int] = field(default_factory=dict)

    def weight(self, a: str, b: str) -> int:
        a, b = sorted((a, b))
        for x, y, w in self.edges:
            if x == a and y == b:
                return w
        return 0


def cooccurrence(groups: Sequence[KeywordGroup], top_k: Optional[int] = None) -> CooccurrenceMatrix:
    """Shared-document counts among the first ``top_k`` groups (all when None)."""
    chosen = list(groups if top_k is None else groups[:top_k])
    labels = tuple(g.canonical_label for g in chosen)
    counts = shared_occurrence({g.canonical_label: g.doc_ids for g in chosen})
    position = {label: i for i, label in enumerate(labels)}
    cells = {}
    for (a, b), n in counts.items():
        i, j = position[a], position[b]
        if i <= j and n:
            cells[(i, j)] = n
    return CooccurrenceMatrix(labels, dict(sorted(cells.items())))


def collaboration_edges(corpus: Corpus, kind: str) -> EdgeList:
    """Each document adds 1 to every pair of distinct entities it is attributed to."""
    if kind not in NETWORK_KINDS:
        raise ValueError(f"unknown network kind {kind!r}; expected one of {NETWORK_KINDS}")
    weights: Counter[tuple[str, str]] = Counter()
    for doc in corpus.documents:
        for pair in combinations(sorted(document_entities(doc, kind)), 2):
            weights[pair] += 1
    nodes = {e: len(u) for e, u in sorted(entity_documents(corpus, kind).items())}
    edges = tuple((a, b, w) for (a, b), w in sorted(weights.items()))
    return EdgeList(kind, edges, nodes)


def filter_network(
    edges: EdgeList,
    top_entities: Optional[int] = None,
    top_edges_per_entity: Optional[int] = None,
    min_weight: int = 1,
) -> EdgeList:
    """Keep the most productive entities and each one's heaviest collaborations.

    Edges are restricted to pairs of retained entities; each entity then
    keeps its ``top_edges_per_entity`` heaviest incident edges (ties broken by
    partner name) and an edge survives when either endpoint keeps it. Edges
    lighter than ``min_weight`` are dropped. ``None`` disables a limit.
    """
    if any(v is not None and v < 0 for v in (top_entities, top_edges_per_entity)) or min_weight < 0:
        raise ValueError("filter parameters must be non-negative")
    ranked = sorted(edges.node_weights, key=lambda e: (-edges.node_weights[e], e))
    if top_entities is not None:
        ranked = ranked[:top_entities]
    keep_nodes = set(ranked)
    candidates = [e for e in edges.edges if e[0] in keep_nodes and e[1] in keep_nodes and e[2] >= min_weight]

    if top_edges_per_entity is None:
        survivors = set(candidates)
    else:
        incident: dict[str, list[tuple[int, str, tuple[str, str, int]]]] = {}
        for edge in candidates:
            a, b, w = edge
            incident.setdefault(a, []).append((-w, b, edge))
            incident.setdefault(b, []).append((-w, a, edge))
        survivors = set()
        for entries in incident.values():
            entries.sort(key=lambda t: (t[0], t[1]))
            survivors.update(t[2] for t in entries[:top_edges_per_entity])

    kept = tuple(e for e in edges.edges if e in survivors)
    nodes = {e: edges.node_weights[e] for e in sorted(keep_nodes)}
    return EdgeList(edges.kind, kept, nodes)


def _matrix_edges(matrix: CooccurrenceMatrix) -> tuple[dict[str, int], list[tuple[str, str, int]]]:
    nodes = {label: matrix.cells.get((i, i), 0) for i, label in enumerate(matrix.labels)}
    edges = [(matrix.labels[i], matrix.labels[j], n) for (i, j), n in sorted(matrix.cells.items()) if i != j]
    return nodes, edges


def _graphml(nodes: dict[str, int], edges: list[tuple[str, str, int]], node_attr: str) -> str:
    ids = {name: f"n{i}" for i, name in enumerate(nodes)}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns" '
        'xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" '
        'xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns '
        'http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
        f'  <key id="{node_attr}" for="node" attr.name="{node_attr}" attr.type="int"/>',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
        '  <graph id="G" edgedefault="undirected">',
    ]
    for name, size in nodes.items():
        out.append(f'    <node id="{ids[name]}">')
        out.append(f'      <data key="label">{escape(name)}</data>')
        out.append(f'      <data key="{node_attr}">{size}</data>')
        out.append("    </node>")
    for k, (a, b, w) in enumerate(edges):
        out.append(f'    <edge id="e{k}" source="{ids[a]}" target="{ids[b]}">')
        out.append(f'      <data key="weight">{w}</data>')
        out.append("    </edge>")
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot(nodes: dict[str, int], edges: list[tuple[str, str, int]], node_attr: str) -> str:
    out = ["graph G {"]
    for name, size in nodes.items():
        out.append(f"  {_dot_id(name)} [{node_attr}={size}];")
    for a, b, w in edges:
        out.append(f'  {_dot_id(a)} -- {_dot_id(b)} [weight={w}, label="{w}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf).writerows(rows)
    return buf.getvalue()


def export_graph(graph: Union[EdgeList, CooccurrenceMatrix], fmt: str) -> bytes:
    """Serialize to GraphML, Graphviz DOT or CSV (UTF-8 bytes).

    CSV for an edge list is ``a,b,weight``; for a matrix it is the full
    square grid with labels along the first row and column.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")
    if isinstance(graph, CooccurrenceMatrix):
        if fmt == "csv":
            rows = [[""] + list(graph.labels)]
            rows += [[label] + row for label, row in zip(graph.labels, graph.grid())]
            return _csv(rows).encode("utf-8")
        nodes, edges = _matrix_edges(graph)
        node_attr = "occurrences"
    else:
        if fmt == "csv":
            return _csv([["a", "b", "weight"]] + [list(e) for e in graph.edges]).encode("utf-8")
        nodes = dict(graph.node_weights)
        for a, b, _ in graph.edges:
            nodes.setdefault(a, 0)
            nodes.setdefault(b, 0)
        edges = list(graph.edges)
        node_attr = "publications"
    render = _graphml if fmt == "graphml" else _dot
    return render(nodes, edges, node_attr).encode("utf-8")


def read_edge_csv(data: bytes) -> list[tuple[str, str, int]]:
    rows = list(csv.reader(io.StringIO(data.decode("utf-8"))))
    if not rows or rows[0] != ["a", "b", "weight"]:
        raise ValueError("edge CSV must start with header a,b,weight")
    return [(a, b, int(w)) for a, b, w in rows[1:]]
