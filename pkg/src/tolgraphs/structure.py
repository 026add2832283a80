"""Neighborhood-domination structure around a vertex.

For a vertex u, the connected components of the graph minus N[u] are
ranked by how their boundaries (their neighborhoods, always inside N(u))
contain one another.  A component with the largest domination closure is
a master component; a deterministically chosen master and a maximal
member of its closure complement anchor a four-way partition of N(u)
that drives the vertex-splitting operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

from .geometry import TrapezoidRep, trap_left_of, verify_rep, vertical_flip
from .graphs import Graph, VertexSet, closed_neighborhood, components, set_neighborhood


@dataclass(frozen=True)
class ComponentFamily:
    """Components of G minus N[u], with their boundaries inside N(u)."""

    vertex: int
    components: tuple[VertexSet, ...]
    boundaries: tuple[VertexSet, ...]

    def __len__(self) -> int:
        return len(self.components)


def component_family(g: Graph, u: int) -> ComponentFamily:
    rest = sorted(set(range(g.n)) - set(closed_neighborhood(g, u)))
    comps = components(g, rest)
    bounds = tuple(set_neighborhood(g, comp) for comp in comps)
    nu = set(g.neighbors(u))
    for comp, bound in zip(comps, bounds):
        if not set(bound) <= nu:
            raise AssertionError(
                f"component {comp} has boundary outside N({u})"
            )
    return ComponentFamily(u, tuple(comps), bounds)


def _closure(fam: ComponentFamily, i: int) -> tuple[int, ...]:
    target = set(fam.boundaries[i])
    return tuple(
        p for p, bound in enumerate(fam.boundaries) if set(bound) <= target
    )


def domination_closure(g: Graph, u: int, i: int) -> tuple[int, ...]:
    """Indices of the components whose boundary is contained in component
    i's boundary (always includes i)."""
    fam = component_family(g, u)
    if not 0 <= i < len(fam):
        raise ValueError(f"component index {i} out of range")
    return _closure(fam, i)


def _masters(fam: ComponentFamily) -> tuple[int, ...]:
    if not fam.components:
        raise ValueError("no components outside the closed neighborhood")
    sizes = [len(_closure(fam, i)) for i in range(len(fam))]
    top = max(sizes)
    return tuple(i for i, s in enumerate(sizes) if s == top)


def master_components(g: Graph, u: int) -> tuple[int, ...]:
    """Indices of the components maximizing the closure cardinality."""
    return _masters(component_family(g, u))


def closure_complement(g: Graph, u: int, i: int) -> tuple[int, ...]:
    fam = component_family(g, u)
    if not 0 <= i < len(fam):
        raise ValueError(f"component index {i} out of range")
    inside = set(_closure(fam, i))
    return tuple(p for p in range(len(fam)) if p not in inside)


def _maximal(fam: ComponentFamily, s: Sequence[int]) -> tuple[int, ...]:
    out = []
    for j in s:
        bj = set(fam.boundaries[j])
        if not any(
            bj < set(fam.boundaries[k]) for k in s if k != j
        ):
            out.append(j)
    return tuple(sorted(out))


def maximal_components(g: Graph, u: int, s: Sequence[int]) -> tuple[int, ...]:
    """Members of s whose boundary is not strictly contained in another
    member's boundary."""
    fam = component_family(g, u)
    for j in s:
        if not 0 <= j < len(fam):
            raise ValueError(f"component index {j} out of range")
    return _maximal(fam, s)


@dataclass(frozen=True)
class Anchors:
    """The deterministically chosen master component and the chosen
    maximal member of its closure complement (None when absent)."""

    family: ComponentFamily
    master: int | None
    opposite: int | None


def select_anchors(g: Graph, u: int) -> Anchors:
    """Smallest-id tie-breaks for the 'arbitrarily chosen' freedoms.

    Components ship ordered by smallest member, so the smallest master
    index is the smallest-vertex-id rule.
    """
    fam = component_family(g, u)
    if not fam.components:
        return Anchors(fam, None, None)
    master = _masters(fam)[0]
    comp = [p for p in range(len(fam)) if p not in set(_closure(fam, master))]
    if not comp:
        return Anchors(fam, master, None)
    opposite = _maximal(fam, comp)[0]
    return Anchors(fam, master, opposite)


@dataclass(frozen=True)
class NeighborPartition:
    """Four-way split of N(u) by adjacency to two reference vertex sets.

    `first` is adjacent to the first set only (the master component, or
    the left side in the representation version), `second` to the second
    only, `both` to both, `neither` to none.
    """

    neither: VertexSet
    first: VertexSet
    second: VertexSet
    both: VertexSet

    def cells(self) -> tuple[VertexSet, VertexSet, VertexSet, VertexSet]:
        return (self.neither, self.first, self.second, self.both)


def _classify(g: Graph, around: Sequence[int], first: set[int], second: set[int]) -> NeighborPartition:
    cells: dict[tuple[bool, bool], list[int]] = {
        (False, False): [],
        (True, False): [],
        (False, True): [],
        (True, True): [],
    }
    for x in around:
        hits_first = any(v in first for v in g.neighbors(x))
        hits_second = any(v in second for v in g.neighbors(x))
        cells[(hits_first, hits_second)].append(x)
    return NeighborPartition(
        neither=tuple(cells[(False, False)]),
        first=tuple(cells[(True, False)]),
        second=tuple(cells[(False, True)]),
        both=tuple(cells[(True, True)]),
    )


def neighbor_partition(g: Graph, u: int) -> NeighborPartition:
    """Partition N(u) by adjacency to the anchor components.

    Only defined when the closure complement of the chosen master is
    nonempty, mirroring the splitting precondition.
    """
    anchors = select_anchors(g, u)
    if anchors.opposite is None:
        raise ValueError(
            f"vertex {u} has an empty closure complement; partition undefined"
        )
    return neighbor_partition_for(g, u, anchors.master, anchors.opposite)


def neighbor_partition_for(
    g: Graph, u: int, master: int, opposite: int
) -> NeighborPartition:
    """The four-way partition for an explicit anchor choice."""
    fam = component_family(g, u)
    return _classify(
        g,
        g.neighbors(u),
        set(fam.components[master]),
        set(fam.components[opposite]),
    )


def anchor_choices(g: Graph, u: int) -> list[tuple[int, int]]:
    """All valid (master, maximal complement member) index pairs, i.e.
    every way the 'arbitrarily chosen' anchor freedoms may be resolved."""
    fam = component_family(g, u)
    if not fam.components:
        return []
    choices = []
    for i in _masters(fam):
        comp = [p for p in range(len(fam)) if p not in set(_closure(fam, i))]
        for j in _maximal(fam, comp):
            choices.append((i, j))
    return choices


def neighbor_partition_rep(
    g: Graph, rep: TrapezoidRep, u: int
) -> tuple[NeighborPartition, VertexSet, VertexSet]:
    """Partition N(u) by adjacency to the trapezoids completely left and
    completely right of u's trapezoid; also returns those two sets."""
    ok, mismatch = verify_rep(rep, g)
    if not ok:
        raise ValueError(f"representation does not realize the graph at {mismatch}")
    left = tuple(v for v in range(g.n) if trap_left_of(rep, v, u))
    right = tuple(v for v in range(g.n) if trap_left_of(rep, u, v))
    part = _classify(g, g.neighbors(u), set(left), set(right))
    return part, left, right


def master_side_normalized(g: Graph, rep: TrapezoidRep, u: int) -> TrapezoidRep:
    """Mirror the rep if needed so the component backing u's master
    anchor lies completely left of u's trapezoid.

    A component of the graph minus N[u] can never straddle u's trapezoid
    in a realizing rep, so one of the two orientations always works.
    """
    ok, mismatch = verify_rep(rep, g)
    if not ok:
        raise ValueError(f"representation does not realize the graph at {mismatch}")
    anchors = select_anchors(g, u)
    if anchors.master is None:
        return rep
    master = anchors.family.components[anchors.master]
    if all(trap_left_of(rep, v, u) for v in master):
        return rep
    if all(trap_left_of(rep, u, v) for v in master):
        return vertical_flip(rep)
    raise AssertionError(f"master component of {u} straddles its trapezoid")


def is_standard_rep(g: Graph, rep: TrapezoidRep, u: int) -> bool:
    """Standard position with respect to u: everything in neither+second
    starts right of u's left line, and everything in neither+first ends
    left of u's right line (on both rails).

    The rep is first normalized so the chosen master lies left of u,
    matching the w.l.o.g. mirroring used throughout; otherwise the
    partition's first/second roles would be tied to an arbitrary
    left-right convention.
    """
    anchors = select_anchors(g, u)
    if anchors.opposite is None:
        raise ValueError(f"vertex {u} has an empty closure complement")
    oriented = master_side_normalized(g, rep, u)
    part = neighbor_partition(g, u)
    lu = oriented.left_line(u)
    ru = oriented.right_line(u)
    for x in part.neither + part.second:
        lx = oriented.left_line(x)
        if not (lu.top < lx.top and lu.bottom < lx.bottom):
            return False
    for x in part.neither + part.first:
        rx = oriented.right_line(x)
        if not (rx.top < ru.top and rx.bottom < ru.bottom):
            return False
    return True
