"""Vertex splitting: replace a vertex by two derivatives wired to the two
sides of its neighbor partition, then the set version that turns a
trapezoid graph into a permutation graph on twice the set size.

Splitting consumes only the abstract graph, never a representation, so
the output cannot depend on which representation a caller happens to
hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

from .graphs import Graph, VertexSet, induced_subgraph
from .structure import neighbor_partition, select_anchors


class SplitPreconditionError(ValueError):
    """A vertex to be split had an empty closure complement."""

    def __init__(self, vertex: int, message: str) -> None:
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class SplitResult:
    """Outcome of splitting a vertex set.

    derivatives maps each original id to the ids of its two derivatives
    in `graph` (first one wired to the master side); dropped lists the
    unsplit vertices removed at the end.
    """

    graph: Graph
    derivatives: dict[int, tuple[int, int]]
    dropped: VertexSet


def split_vertex(g: Graph, u: int) -> tuple[Graph, tuple[int, int], dict[int, int]]:
    """Replace u by derivatives u1 (adjacent to the master-side neighbors
    and the shared ones) and u2 (the opposite side and the shared ones).

    Returns the new graph, the derivative ids, and the relabeling of the
    surviving old vertices.  The derivatives are never adjacent to each
    other or to neighbors that see neither anchor component.
    """
    anchors = select_anchors(g, u)
    if anchors.opposite is None:
        raise SplitPreconditionError(
            u, f"vertex {u} has an empty closure complement; cannot split"
        )
    part = neighbor_partition(g, u)
    survivors = [v for v in range(g.n) if v != u]
    relabel = {v: i for i, v in enumerate(survivors)}
    u1 = len(survivors)
    u2 = u1 + 1
    edges = [
        (relabel[a], relabel[b]) for a, b in g.edges if a != u and b != u
    ]
    for x in part.first + part.both:
        edges.append((u1, relabel[x]))
    for x in part.second + part.both:
        edges.append((u2, relabel[x]))
    return Graph(u2 + 1, edges), (u1, u2), relabel


def split_vertices(g: Graph, u_set: Sequence[int]) -> SplitResult:
    """Split every vertex of u_set once (in the given order), then keep
    only the derivatives.

    The closure-complement precondition is re-checked on each
    intermediate graph; a failure names the offending vertex rather than
    assuming the property survives earlier splits.
    """
    u_list = list(dict.fromkeys(u_set))
    for u in u_list:
        if not 0 <= u < g.n:
            raise ValueError(f"vertex id {u} out of range")
    current = g
    where = {v: v for v in range(g.n)}  # original id -> current id
    derivative_ids: dict[int, tuple[int, int]] = {}
    for step, u in enumerate(u_list):
        try:
            current, (d1, d2), relabel = split_vertex(current, where[u])
        except SplitPreconditionError as exc:
            if step == 0:
                raise SplitPreconditionError(u, str(exc)) from exc
            raise SplitPreconditionError(
                u,
                f"vertex {u} lost its nonempty closure complement after "
                f"{step} earlier splits: {exc}",
            ) from exc
        for orig, cur in list(where.items()):
            if orig == u:
                continue
            where[orig] = relabel[cur]
        for orig, (a, b) in list(derivative_ids.items()):
            derivative_ids[orig] = (relabel[a], relabel[b])
        del where[u]
        derivative_ids[u] = (d1, d2)
    keep = sorted(x for pair in derivative_ids.values() for x in pair)
    final, relabel = induced_subgraph(current, keep)
    derivatives = {
        u: (relabel[a], relabel[b]) for u, (a, b) in derivative_ids.items()
    }
    dropped = tuple(sorted(set(range(g.n)) - set(u_list)))
    return SplitResult(final, derivatives, dropped)
