"""Rail-order orientations and pair-merged digraphs.

A permutation rep orients each crossing pair toward the larger
displacement key (bottom minus top).  Merging a perfect matching of the
lines quotients that orientation into a digraph whose acyclicity is the
property everything downstream cares about: a trapezoid rep is acyclic
when the rep of its boundary lines is acyclic with respect to the
per-vertex line pairs.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from fractions import Fraction
from itertools import chain, combinations
from typing import NamedTuple

from ._core import crossing_arcs, spfa_longest
from ._core._kernels_py import spfa_longest as _spfa_longest_bigint
from .geometry import (
    Line,
    ParallelogramRep,
    PermutationRep,
    Trapezoid,
    TrapezoidRep,
    check_block_slot,
    graph_of_trapezoid_rep,
    rank_order,
    scaled_ints,
    verify_rep,
    _flip_blocks_unchecked,
)


class PairSet:
    """A perfect matching on representation ids, in a fixed order.

    Merged-vertex i is the i-th pair; every id must occur exactly once.
    """

    __slots__ = ("pairs", "pair_of")

    def __init__(self, pairs) -> None:
        normalized = []
        pair_of: dict[int, int] = {}
        for idx, (x, y) in enumerate(pairs):
            x, y = int(x), int(y)
            if x == y:
                raise ValueError(f"pair {idx} repeats id {x}")
            normalized.append((x, y) if x < y else (y, x))
            for member in (x, y):
                if member in pair_of:
                    raise ValueError(f"id {member} occurs in two pairs")
                pair_of[member] = idx
        self.pairs: tuple[tuple[int, int], ...] = tuple(normalized)
        self.pair_of = pair_of

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self.pairs[i]

    def __iter__(self):
        return iter(self.pairs)

    def covers(self, n: int) -> bool:
        return set(self.pair_of) == set(range(n))

    def require_covers(self, n: int) -> None:
        if not self.covers(n):
            raise ValueError("pairs are not a perfect matching on ids 0..n-1")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairSet):
            return NotImplemented
        return self.pairs == other.pairs

    def __repr__(self) -> str:
        return f"PairSet(m={len(self.pairs)})"

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    @classmethod
    def from_json(cls, obj) -> "PairSet":
        return cls([(int(x), int(y)) for x, y in obj])


class Orientation:
    """A set of ordered arcs over the edges of an underlying graph."""

    __slots__ = ("n", "arcs")

    def __init__(self, n: int, arcs) -> None:
        arcset = set()
        for u, v in arcs:
            if u == v:
                raise ValueError("orientation arc cannot be a loop")
            if (v, u) in arcset:
                raise ValueError(f"both directions present for edge {u},{v}")
            arcset.add((u, v))
        self.n = n
        self.arcs: frozenset[tuple[int, int]] = frozenset(arcset)

    def __repr__(self) -> str:
        return f"Orientation(n={self.n}, arcs={len(self.arcs)})"


class MergedDigraph(NamedTuple):
    """Quotient of an orientation under a pair matching.

    Arcs inside a pair become loops and are recorded separately: a loop
    (or any directed cycle) makes the representation non-acyclic.
    """

    pairs: PairSet
    arcs: frozenset[tuple[int, int]]
    loops: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.pairs)


class AcyclicityResult(NamedTuple):
    acyclic: bool
    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.acyclic


def slope_key(line: Line) -> Fraction:
    """Monotone surrogate for the angle against the bottom rail.

    Crossing lines always have distinct keys, and any fixed monotone
    convention yields one of the two mutually reversed orientations, for
    which every acyclicity statement agrees.
    """
    return line.bottom - line.top


def transitive_orientation(r: PermutationRep) -> Orientation:
    """Orient each crossing pair toward the larger slope key.

    The result is transitive on the induced graph: if x -> y -> z then
    x and z cross and key(x) < key(z).
    """
    arcs = []
    for x, y in crossing_arcs(
        rank_order([ln.top for ln in r.lines]),
        rank_order([ln.bottom for ln in r.lines]),
    ):
        assert slope_key(r.lines[x]) < slope_key(r.lines[y])
        arcs.append((x, y))
    return Orientation(r.n, arcs)


def check_transitive(o: Orientation) -> bool:
    """Triple scan: every composable arc pair must short-cut."""
    succ: dict[int, set[int]] = {}
    for u, v in o.arcs:
        succ.setdefault(u, set()).add(v)
    for u, vs in succ.items():
        for v in vs:
            for w in succ.get(v, ()):
                if w not in vs:
                    return False
    return True


def merge_pairs(phi: Orientation, pairs: PairSet) -> MergedDigraph:
    """Quotient digraph: one vertex per pair, deduplicated arcs between
    distinct pairs, intra-pair arcs recorded as loops."""
    pairs.require_covers(phi.n)
    arcs = set()
    loops = set()
    for u, v in phi.arcs:
        pu, pv = pairs.pair_of[u], pairs.pair_of[v]
        if pu == pv:
            loops.add(pu)
        else:
            arcs.add((pu, pv))
    return MergedDigraph(pairs, frozenset(arcs), frozenset(loops))


def shortest_cycle(d: MergedDigraph) -> tuple[int, ...] | None:
    """Shortest directed cycle (as a vertex tuple), loops included;
    found by breadth-first search from every vertex."""
    if d.loops:
        return (min(d.loops),)
    succ: dict[int, list[int]] = {v: [] for v in range(d.n)}
    for u, v in sorted(d.arcs):
        succ[u].append(v)
    best: tuple[int, ...] | None = None
    for start in range(d.n):
        parent = {start: -1}
        queue = deque([start])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for v in succ[u]:
                if v == start:
                    found = u
                    break
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if found is None:
            continue
        path = [found]
        while path[-1] != start:
            path.append(parent[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = tuple(path)
    return best


def is_acyclic_wrt_pairs(r: PermutationRep, pairs: PairSet) -> AcyclicityResult:
    """True iff the pair-merged orientation digraph has no loop and no
    directed cycle; on failure carries a shortest witness cycle."""
    merged = merge_pairs(transitive_orientation(r), pairs)
    if merged.loops:
        return AcyclicityResult(False, (min(merged.loops),))
    indeg = [0] * merged.n
    succ: dict[int, list[int]] = {v: [] for v in range(merged.n)}
    for u, v in merged.arcs:
        succ[u].append(v)
        indeg[v] += 1
    queue = deque(v for v in range(merged.n) if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if seen == merged.n:
        return AcyclicityResult(True, None)
    return AcyclicityResult(False, shortest_cycle(merged))


def split_into_lines(r: TrapezoidRep) -> tuple[PermutationRep, PairSet]:
    """Boundary lines of the trapezoids: vertex v yields its left line as
    id 2v and right line as id 2v+1, paired per vertex."""
    lines = []
    pairs = []
    for v, t in enumerate(r.traps):
        lines.append(Line(t.a, t.c))
        lines.append(Line(t.b, t.d))
        pairs.append((2 * v, 2 * v + 1))
    return PermutationRep(lines), PairSet(pairs)


def is_acyclic_trapezoid_rep(r: TrapezoidRep) -> bool:
    lines, pairs = split_into_lines(r)
    return is_acyclic_wrt_pairs(lines, pairs).acyclic


def find_acyclic_flip(
    r: PermutationRep, pairs: PairSet, blocks: Sequence[Sequence[int]]
) -> tuple[int, ...] | None:
    """First flip subset (lexicographic over sorted tuples of block
    indices) whose block-flipped rep is acyclic with respect to `pairs`,
    or None when all 2^#blocks subsets fail.
    """
    pairs.require_covers(r.n)
    covered: set[int] = set()
    for block in blocks:
        if covered & set(block):
            raise ValueError("blocks overlap")
        covered.update(block)
        check_block_slot(r, block)
    if covered != set(range(r.n)):
        raise ValueError("blocks do not partition the representation ids")
    indices = range(len(blocks))
    subsets = sorted(
        chain.from_iterable(combinations(indices, k) for k in range(len(blocks) + 1))
    )
    for subset in subsets:
        flipped = _flip_blocks_unchecked(r, [blocks[i] for i in subset])
        if is_acyclic_wrt_pairs(flipped, pairs).acyclic:
            return subset
    return None


def parallelogramize(r: TrapezoidRep) -> ParallelogramRep | None:
    """Straighten an acyclic trapezoid rep into a parallelogram rep of
    the same graph; None when infeasible.

    Top coordinates are kept and one displacement per vertex is solved
    from difference constraints over exactly the bottom comparisons the
    adjacency predicate can read: for an ordered vertex pair (v, w)
    whose top intervals are separated (v's right top left of w's left
    top), the separation verdict is decided by the bottoms, so the new
    bottoms must keep the input's relation there; pairs with overlapping
    tops intersect no matter what their bottoms do and stay
    unconstrained.  A feasible solution therefore reproduces every
    separation predicate, hence the graph (still verified before
    returning).  Constraining any more than this is unsatisfiable on
    guard-padded instances: relations between bottoms that the predicate
    never reads would chain each vertex's displacement to both of its
    boundary lines at once.  Strict inequalities get slack eps =
    (minimum rail gap)/(4n); a longest-path computation over the
    constraint digraph yields the displacements, and a positive cycle
    certifies infeasibility.  Bottom collisions between unconstrained
    lines are broken afterwards by per-vertex shifts far below every
    constraint margin.
    """
    if not is_acyclic_trapezoid_rep(r):
        return None
    n = r.n
    gaps = []
    for rail in (
        [t.a for t in r.traps] + [t.b for t in r.traps],
        [t.c for t in r.traps] + [t.d for t in r.traps],
    ):
        ordered = sorted(rail)
        gaps.extend(b - a for a, b in zip(ordered, ordered[1:]))
    eps = min(gaps) / (4 * n) if gaps else Fraction(1)

    all_values = [t.a for t in r.traps] + [t.b for t in r.traps] + [eps]
    scaled, scale = scaled_ints(all_values)
    ia = scaled[:n]
    ib = scaled[n : 2 * n]
    ieps = scaled[-1]
    best: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, w: int) -> None:
        if best.get((u, v), w - 1) < w:
            best[(u, v)] = w

    for v in range(n):
        tv = r.traps[v]
        for w in range(n):
            if v == w:
                continue
            tw = r.traps[w]
            if not tv.b < tw.a:
                continue  # tops overlap or w is left: bottoms never read
            if tv.d < tw.c:
                # non-adjacent: keep b(v) - delta(v) < a(w) - delta(w)
                add(w, v, ib[v] - ia[w] + ieps)
            else:
                # adjacent through the bottoms: keep the crossing
                add(v, w, ia[w] - ib[v] + ieps)
    arc_u = [k[0] for k in best]
    arc_v = [k[1] for k in best]
    arc_w = [best[k] for k in best]
    # relaxed distances stay below (n+1) * max |weight|; route weights the
    # compiled int64 kernel cannot hold through the bigint fallback
    max_w = max((abs(w) for w in arc_w), default=0)
    solver = spfa_longest if (max_w + 1) * (n + 1) < 2**62 else _spfa_longest_bigint
    dist = solver(n, arc_u, arc_v, arc_w)
    if dist is None:
        return None
    disp = [Fraction(d, scale) for d in dist]
    bottoms = [t.a - disp[v] for v, t in enumerate(r.traps)] + [
        t.b - disp[v] for v, t in enumerate(r.traps)
    ]
    if len(set(bottoms)) != 2 * n:
        distinct = sorted(set(bottoms))
        min_gap = min(
            (b - a for a, b in zip(distinct, distinct[1:])), default=Fraction(1)
        )
        eta = min(eps, min_gap) / (4 * n)
        disp = [d + v * eta for v, d in enumerate(disp)]
    out = ParallelogramRep(
        [
            Trapezoid(t.a, t.b, t.a - disp[v], t.b - disp[v])
            for v, t in enumerate(r.traps)
        ]
    )
    ok, mismatch = verify_rep(out, graph_of_trapezoid_rep(r))
    if not ok:
        raise RuntimeError(f"straightening changed the graph at pair {mismatch}")
    return out
