"""Intersection models between two parallel rails, and the
interval-with-tolerance model.

All coordinates are exact rationals: the guard-parallelogram construction
nests offsets geometrically (eps/2, eps/4, 3*eps/8, ...) and only the
ordinal positions matter, so floating point is never acceptable here.
Representations are keyed by dense ids 0..n-1 matching their graph.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from ._core import crossing_arcs, trapezoid_edges
from .graphs import Graph

RationalLike = Fraction | int | str


def as_fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Line(NamedTuple):
    """A segment joining coordinate `top` on the upper rail to `bottom`
    on the lower rail."""

    top: Fraction
    bottom: Fraction


class Trapezoid(NamedTuple):
    """Corner coordinates: a/b on the top rail, c/d on the bottom rail,
    left-to-right."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction


class ToleranceInterval(NamedTuple):
    left: Fraction
    right: Fraction
    tol: Fraction


def _coerce_items(items):
    """Accept a sequence or an id-keyed mapping; return a tuple indexed
    by dense ids 0..n-1."""
    if isinstance(items, Mapping):
        keys = sorted(int(k) for k in items.keys())
        if keys != list(range(len(keys))):
            raise ValueError("representation ids must be dense 0..n-1")
        return tuple(items[k] if k in items else items[str(k)] for k in keys)
    return tuple(items)


def _check_distinct(values: Sequence[Fraction], rail: str) -> None:
    if len(set(values)) != len(values):
        raise ValueError(f"duplicate coordinate on the {rail} rail")


class PermutationRep:
    """Family of lines with pairwise distinct endpoints on each rail."""

    __slots__ = ("lines",)

    def __init__(self, lines) -> None:
        coerced = []
        for ln in _coerce_items(lines):
            top, bottom = ln
            coerced.append(Line(as_fraction(top), as_fraction(bottom)))
        self.lines: tuple[Line, ...] = tuple(coerced)
        _check_distinct([ln.top for ln in self.lines], "top")
        _check_distinct([ln.bottom for ln in self.lines], "bottom")

    @property
    def n(self) -> int:
        return len(self.lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationRep):
            return NotImplemented
        return self.lines == other.lines

    def __hash__(self) -> int:
        return hash(self.lines)

    def __repr__(self) -> str:
        return f"PermutationRep(n={self.n})"


class TrapezoidRep:
    """Family of trapezoids; all endpoints on each rail pairwise distinct."""

    __slots__ = ("traps",)

    def __init__(self, traps) -> None:
        coerced = []
        for t in _coerce_items(traps):
            a, b, c, d = (as_fraction(x) for x in t)
            if not (a < b and c < d):
                raise ValueError(f"trapezoid corners out of order: {(a, b, c, d)}")
            coerced.append(Trapezoid(a, b, c, d))
        self.traps: tuple[Trapezoid, ...] = tuple(coerced)
        tops = [t.a for t in self.traps] + [t.b for t in self.traps]
        bottoms = [t.c for t in self.traps] + [t.d for t in self.traps]
        _check_distinct(tops, "top")
        _check_distinct(bottoms, "bottom")

    @property
    def n(self) -> int:
        return len(self.traps)

    def left_line(self, v: int) -> Line:
        t = self.traps[v]
        return Line(t.a, t.c)

    def right_line(self, v: int) -> Line:
        t = self.traps[v]
        return Line(t.b, t.d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrapezoidRep):
            return NotImplemented
        return self.traps == other.traps

    def __hash__(self) -> int:
        return hash(self.traps)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


class ParallelogramRep(TrapezoidRep):
    """Trapezoid rep whose left and right lines are parallel per vertex:
    a - c == b - d."""

    __slots__ = ()

    def __init__(self, traps) -> None:
        super().__init__(traps)
        for v, t in enumerate(self.traps):
            if t.a - t.c != t.b - t.d:
                raise ValueError(f"vertex {v} is not a parallelogram: {t}")


class ToleranceRep:
    """Closed intervals with positive tolerances.

    Tolerances larger than the interval length are allowed (the unbounded
    model); `bounded` is a checked predicate, not a type restriction.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals) -> None:
        coerced = []
        for iv in _coerce_items(intervals):
            l, r, t = (as_fraction(x) for x in iv)
            if not l < r:
                raise ValueError(f"empty interval [{l}, {r}]")
            if not t > 0:
                raise ValueError(f"nonpositive tolerance {t}")
            coerced.append(ToleranceInterval(l, r, t))
        self.intervals: tuple[ToleranceInterval, ...] = tuple(coerced)

    @property
    def n(self) -> int:
        return len(self.intervals)

    @property
    def bounded(self) -> bool:
        return all(iv.tol <= iv.right - iv.left for iv in self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ToleranceRep):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        return f"ToleranceRep(n={self.n}, bounded={self.bounded})"


Rep = PermutationRep | TrapezoidRep | ToleranceRep


def rank_order(values: Sequence[Fraction]) -> list[int]:
    """Rank of each value within the (distinct) sequence, 0-based."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order):
        ranks[i] = r
    return ranks


def permutation_arcs(r: PermutationRep) -> list[tuple[int, int]]:
    """Crossing pairs directed toward the larger displacement key."""
    tops = rank_order([ln.top for ln in r.lines])
    bottoms = rank_order([ln.bottom for ln in r.lines])
    return crossing_arcs(tops, bottoms)


def graph_of_permutation_rep(r: PermutationRep) -> Graph:
    """Edge exactly when two lines cross (rail orders disagree)."""
    return Graph(r.n, permutation_arcs(r))


def graph_of_trapezoid_rep(r: TrapezoidRep) -> Graph:
    """Edge exactly when neither trapezoid lies completely left of the other."""
    tops = rank_order([t.a for t in r.traps] + [t.b for t in r.traps])
    bottoms = rank_order([t.c for t in r.traps] + [t.d for t in r.traps])
    n = r.n
    a = tops[:n]
    b = tops[n:]
    c = bottoms[:n]
    d = bottoms[n:]
    return Graph(n, trapezoid_edges(a, b, c, d))


def graph_of_tolerance_rep(r: ToleranceRep) -> Graph:
    """Edge exactly when the intervals overlap by at least the smaller
    tolerance."""
    edges = []
    for i in range(r.n):
        li, ri, ti = r.intervals[i]
        for j in range(i + 1, r.n):
            lj, rj, tj = r.intervals[j]
            overlap = min(ri, rj) - max(li, lj)
            if overlap >= min(ti, tj):
                edges.append((i, j))
    return Graph(r.n, edges)


def graph_of(r: Rep) -> Graph:
    if isinstance(r, PermutationRep):
        return graph_of_permutation_rep(r)
    if isinstance(r, TrapezoidRep):
        return graph_of_trapezoid_rep(r)
    if isinstance(r, ToleranceRep):
        return graph_of_tolerance_rep(r)
    raise TypeError(f"not a representation: {r!r}")


def line_left_of(x: Line, y: Line) -> bool:
    """Line x strictly left of line y on both rails (non-crossing order)."""
    return x.top < y.top and x.bottom < y.bottom


def trap_left_of(r: TrapezoidRep, x: int, y: int) -> bool:
    """The strict left-of relation on non-adjacent trapezoids."""
    tx, ty = r.traps[x], r.traps[y]
    return tx.b < ty.a and tx.d < ty.c


def vertical_flip(r):
    """Mirror across a line perpendicular to the rails (negate coordinates).

    Preserves the induced graph; left and right swap everywhere.
    """
    if isinstance(r, PermutationRep):
        return PermutationRep([Line(-ln.top, -ln.bottom) for ln in r.lines])
    if isinstance(r, TrapezoidRep):
        flipped = [Trapezoid(-t.b, -t.a, -t.d, -t.c) for t in r.traps]
        return type(r)(flipped)
    raise TypeError("vertical_flip applies to rail representations")


def horizontal_flip(r):
    """Mirror across a line parallel to the rails (swap the two rails).

    Preserves the induced graph; displacement keys negate.
    """
    if isinstance(r, PermutationRep):
        return PermutationRep([Line(ln.bottom, ln.top) for ln in r.lines])
    if isinstance(r, TrapezoidRep):
        return type(r)([Trapezoid(t.c, t.d, t.a, t.b) for t in r.traps])
    raise TypeError("horizontal_flip applies to rail representations")


def _block_span(r: PermutationRep, block: Sequence[int]) -> tuple[Fraction, Fraction]:
    coords = [r.lines[i].top for i in block] + [r.lines[i].bottom for i in block]
    return min(coords), max(coords)


def check_block_slot(r: PermutationRep, block: Sequence[int]) -> None:
    """A block may be rail-swapped in place only if no other line has an
    endpoint inside the block's combined coordinate span."""
    members = set(block)
    for i in members:
        if not 0 <= i < r.n:
            raise ValueError(f"block member {i} out of range")
    lo, hi = _block_span(r, block)
    for i in range(r.n):
        if i in members:
            continue
        for coord in r.lines[i]:
            if lo <= coord <= hi:
                raise ValueError(
                    f"line {i} has an endpoint inside the block span [{lo}, {hi}]"
                )


def block_horizontal_flip(r: PermutationRep, block: Sequence[int]) -> PermutationRep:
    """Swap top and bottom coordinates of the block's lines only.

    Requires the block to occupy a coordinate slot disjoint from every
    other line, which makes the operation graph-preserving.
    """
    check_block_slot(r, block)
    return _flip_blocks_unchecked(r, [block])


def _flip_blocks_unchecked(
    r: PermutationRep, blocks: Sequence[Sequence[int]]
) -> PermutationRep:
    flip = set()
    for block in blocks:
        flip.update(block)
    return PermutationRep(
        [
            Line(ln.bottom, ln.top) if i in flip else ln
            for i, ln in enumerate(r.lines)
        ]
    )


def flip_blocks(r: PermutationRep, blocks: Sequence[Sequence[int]]) -> PermutationRep:
    """Apply block_horizontal_flip to several disjoint blocks at once."""
    seen: set[int] = set()
    for block in blocks:
        if seen & set(block):
            raise ValueError("blocks overlap")
        seen.update(block)
        check_block_slot(r, block)
    return _flip_blocks_unchecked(r, blocks)


def _min_positive_gap(values: Sequence[Fraction]) -> Fraction | None:
    distinct = sorted(set(values))
    if len(distinct) < 2:
        return None
    return min(b - a for a, b in zip(distinct, distinct[1:]))


def tolerance_to_parallelogram(r: ToleranceRep) -> ParallelogramRep:
    """Convert a bounded tolerance rep to a parallelogram rep inducing the
    same graph (verified before returning).

    Per vertex the parallelogram is (l+t, r, l, r-t).  Extreme tolerances
    t == r-l would give zero-width parallelograms, so they are first
    reduced by gap/(4n); this cannot change any adjacency because every
    intersection length is either 0 or at least the minimum endpoint gap.
    If the raw corners collide across vertices, a graph-preserving
    perturbation (uniform tolerance reduction plus per-vertex shifts far
    below the decision margins) is applied before converting.
    """
    if not r.bounded:
        raise ValueError("tolerance representation is not bounded")
    want = graph_of_tolerance_rep(r)
    n = r.n
    endpoints = [iv.left for iv in r.intervals] + [iv.right for iv in r.intervals]
    gap = _min_positive_gap(endpoints)
    delta = gap / (4 * n) if gap is not None else Fraction(0)
    reduced = [
        ToleranceInterval(
            iv.left,
            iv.right,
            iv.tol - delta if iv.tol == iv.right - iv.left else iv.tol,
        )
        for iv in r.intervals
    ]
    try:
        out = ParallelogramRep(
            [(l + t, rr, l, rr - t) for l, rr, t in reduced]
        )
    except ValueError:
        out = _perturbed_parallelogram(r, want)
    got = graph_of_trapezoid_rep(out)
    if got != want:
        raise RuntimeError("tolerance conversion changed the induced graph")
    return out


def _perturbed_parallelogram(r: ToleranceRep, want: Graph) -> ParallelogramRep:
    """General-position fallback: make every adjacency decision strict,
    then break remaining corner ties with per-vertex shifts."""
    n = r.n
    min_tol = min(iv.tol for iv in r.intervals)
    margins = []
    for i in range(n):
        li, ri, ti = r.intervals[i]
        for j in range(i + 1, n):
            lj, rj, tj = r.intervals[j]
            overlap = min(ri, rj) - max(li, lj)
            slack = min(ti, tj) - overlap
            if slack > 0:
                margins.append(slack)
    gamma0 = min(margins) if margins else min_tol
    shrink = min(gamma0, min_tol) / 2
    strict = [
        ToleranceInterval(iv.left, iv.right, iv.tol - shrink) for iv in r.intervals
    ]
    # every decision now has margin >= min(shrink, gamma0/2)
    margin = min(shrink, gamma0 / 2)
    derived = []
    for l, rr, t in strict:
        derived.extend((l + t, rr, l, rr - t))
    gap2 = _min_positive_gap(derived) or margin
    eta = min(margin, gap2) / (8 * max(n, 1))
    shifted = [
        (l + i * eta + t, rr + i * eta, l + i * eta, rr + i * eta - t)
        for i, (l, rr, t) in enumerate(strict)
    ]
    return ParallelogramRep(shifted)


def parallelogram_to_tolerance(r: ParallelogramRep) -> ToleranceRep:
    """Convert a parallelogram rep to a bounded tolerance rep of the same
    graph (verified before returning).

    The rep is first sheared by adding M = max(c-a)+1 to every top
    coordinate; shearing shifts one rail uniformly, so both rail orders
    and hence the graph are unchanged.  The sheared vertex (a', b', c, d)
    then reads back as interval [c, b'] with tolerance a' - c.
    """
    want = graph_of_trapezoid_rep(r)
    shear = max(t.c - t.a for t in r.traps) + 1
    out = ToleranceRep(
        [(t.c, t.b + shear, t.a + shear - t.c) for t in r.traps]
    )
    if not out.bounded:
        raise RuntimeError("conversion produced an unbounded tolerance rep")
    if graph_of_tolerance_rep(out) != want:
        raise RuntimeError("parallelogram conversion changed the induced graph")
    return out


def renormalize(r):
    """Replace each rail's coordinates by their ranks 1..k.

    Graph and all left-of relations are preserved (only orders matter).
    A ParallelogramRep comes back as a plain TrapezoidRep: rank maps do
    not preserve the parallel-sides invariant.
    """
    if isinstance(r, PermutationRep):
        tops = rank_order([ln.top for ln in r.lines])
        bottoms = rank_order([ln.bottom for ln in r.lines])
        return PermutationRep(
            [
                Line(Fraction(tops[i] + 1), Fraction(bottoms[i] + 1))
                for i in range(r.n)
            ]
        )
    if isinstance(r, TrapezoidRep):
        n = r.n
        tops = rank_order([t.a for t in r.traps] + [t.b for t in r.traps])
        bottoms = rank_order([t.c for t in r.traps] + [t.d for t in r.traps])
        return TrapezoidRep(
            [
                (
                    Fraction(tops[i] + 1),
                    Fraction(tops[n + i] + 1),
                    Fraction(bottoms[i] + 1),
                    Fraction(bottoms[n + i] + 1),
                )
                for i in range(n)
            ]
        )
    raise TypeError("renormalize applies to rail representations")


def verify_rep(r: Rep, g: Graph) -> tuple[bool, tuple[int, int] | None]:
    """Check that r induces exactly g; on mismatch also return the first
    differing pair (sorted order)."""
    if _rep_size(r) != g.n:
        raise ValueError(
            f"representation has {_rep_size(r)} ids but graph has {g.n}"
        )
    induced = graph_of(r)
    if induced == g:
        return True, None
    diff = sorted(induced.edges ^ g.edges)
    return False, diff[0]


def _rep_size(r: Rep) -> int:
    return r.n


def rep_to_json(r: Rep) -> dict:
    if isinstance(r, PermutationRep):
        return {
            "lines": {
                str(i): {"top": str(ln.top), "bottom": str(ln.bottom)}
                for i, ln in enumerate(r.lines)
            }
        }
    if isinstance(r, TrapezoidRep):
        return {
            "traps": {
                str(i): {"a": str(t.a), "b": str(t.b), "c": str(t.c), "d": str(t.d)}
                for i, t in enumerate(r.traps)
            }
        }
    if isinstance(r, ToleranceRep):
        return {
            "intervals": {
                str(i): {"l": str(iv.left), "r": str(iv.right), "t": str(iv.tol)}
                for i, iv in enumerate(r.intervals)
            }
        }
    raise TypeError(f"not a representation: {r!r}")


def rep_from_json(obj: dict) -> Rep:
    """Rebuild a representation from its JSON form; the container key
    discriminates the type.  A trapezoid rep that happens to satisfy the
    parallelogram invariant loads as ParallelogramRep."""
    if "lines" in obj:
        items = {
            int(k): (v["top"], v["bottom"]) for k, v in obj["lines"].items()
        }
        return PermutationRep(items)
    if "traps" in obj:
        items = {
            int(k): (v["a"], v["b"], v["c"], v["d"])
            for k, v in obj["traps"].items()
        }
        try:
            return ParallelogramRep(items)
        except ValueError:
            return TrapezoidRep(items)
    if "intervals" in obj:
        items = {
            int(k): (v["l"], v["r"], v["t"]) for k, v in obj["intervals"].items()
        }
        return ToleranceRep(items)
    raise ValueError("unrecognized representation JSON (no lines/traps/intervals)")


def load_rep(path) -> Rep:
    with open(path) as fh:
        return rep_from_json(json.load(fh))


def dump_rep(r: Rep, path) -> None:
    with open(path, "w") as fh:
        json.dump(rep_to_json(r), fh, indent=2, sort_keys=True)
        fh.write("\n")


def scaled_ints(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rationals by the lcm of their denominators; returns the
    integer values and the scale."""
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * scale) for v in values], scale
