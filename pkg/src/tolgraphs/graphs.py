"""Simple undirected graphs on dense integer vertex ids.

Vertices are always 0..n-1.  Human-readable names (gadget line labels,
fixture vertex names) live in separate label maps, never in the graph
itself, so the algorithmic core stays allocation-light and deterministic.
Vertex sets are exchanged as sorted tuples of ids.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence

VertexSet = tuple[int, ...]


class GuardExceeded(ValueError):
    """An exhaustive oracle was asked to search beyond its hard size guard."""


def _check_vertex(n: int, u: int) -> None:
    if not 0 <= u < n:
        raise ValueError(f"vertex id {u} out of range 0..{n - 1}")


class Graph:
    """Immutable simple graph: no self-loops, no duplicate edges."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = frozenset(normalized)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> tuple[int, ...]:
        _check_vertex(self.n, u)
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def neighborhood(g: Graph, u: int) -> VertexSet:
    """N(u): the vertices adjacent to u."""
    return g.neighbors(u)


def closed_neighborhood(g: Graph, u: int) -> VertexSet:
    """N[u] = N(u) plus u itself."""
    return tuple(sorted(g.neighbors(u) + (u,)))


def set_neighborhood(g: Graph, s: Sequence[int]) -> VertexSet:
    """N(S): vertices outside S with at least one neighbor inside S."""
    inside = set(s)
    for u in inside:
        _check_vertex(g.n, u)
    out: set[int] = set()
    for u in inside:
        out.update(g.neighbors(u))
    return tuple(sorted(out - inside))


def components(g: Graph, restrict: Sequence[int]) -> list[VertexSet]:
    """Connected components of the subgraph induced on `restrict`,
    ordered by smallest contained id."""
    allowed = set(restrict)
    for u in allowed:
        _check_vertex(g.n, u)
    seen: set[int] = set()
    parts: list[VertexSet] = []
    for start in sorted(allowed):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.neighbors(u):
                if v in allowed and v not in seen:
                    seen.add(v)
                    stack.append(v)
        parts.append(tuple(sorted(comp)))
    return parts


def induced_subgraph(g: Graph, s: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on `s`, relabeled to 0..|s|-1; returns (graph, old-to-new map)."""
    ids = sorted(set(s))
    for u in ids:
        _check_vertex(g.n, u)
    relabel = {u: i for i, u in enumerate(ids)}
    keep = set(ids)
    edges = [
        (relabel[u], relabel[v]) for u, v in g.edges if u in keep and v in keep
    ]
    return Graph(len(ids), edges), relabel


def complement(g: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in g.edges
    ]
    return Graph(g.n, edges)


def labeled_equal(g1: Graph, g2: Graph, bijection: Mapping[int, int]) -> bool:
    """True iff `bijection` (total on g1's ids) is an isomorphism onto g2."""
    if set(bijection.keys()) != set(range(g1.n)):
        raise ValueError("bijection is not total on the first graph's ids")
    image = set(bijection.values())
    if len(image) != g1.n or g2.n != g1.n or image != set(range(g2.n)):
        raise ValueError("map is not a bijection onto the second graph's ids")
    mapped = set()
    for u, v in g1.edges:
        a, b = bijection[u], bijection[v]
        mapped.add((a, b) if a < b else (b, a))
    return mapped == g2.edges


def graph_to_json(g: Graph, labels: Mapping[int, str] | None = None) -> dict:
    obj: dict = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if labels is not None:
        obj["labels"] = {str(u): labels[u] for u in sorted(labels)}
    return obj


def graph_from_json(obj: dict) -> tuple[Graph, dict[int, str] | None]:
    g = Graph(int(obj["n"]), [(int(u), int(v)) for u, v in obj["edges"]])
    labels = obj.get("labels")
    if labels is not None:
        labels = {int(k): str(v) for k, v in labels.items()}
    return g, labels


def load_graph(path) -> tuple[Graph, dict[int, str] | None]:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def dump_graph(g: Graph, path, labels: Mapping[int, str] | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g, labels), fh, indent=2, sort_keys=True)
        fh.write("\n")


def to_dot(g: Graph, labels: Mapping[int, str] | None = None) -> str:
    """Undirected DOT text, vertices and edges in id order."""
    lines = ["graph {"]
    for u in range(g.n):
        if labels and u in labels:
            name = str(labels[u]).replace('"', '\\"')
            lines.append(f'  {u} [label="{name}"];')
        else:
            lines.append(f"  {u};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
