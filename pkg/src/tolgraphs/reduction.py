"""Monotone 3-CNF parsing and the three-stage hardness-gadget build.

Stage one lays out one crossing line pair per clause literal, grouped
into per-variable blocks with parallel connector pairs between
consecutive pairs of a block, and records the merge matching.  Stage two
replaces each merge pair by the trapezoid spanned by its two lines.
Stage three pads every trapezoid with six guard parallelograms nested at
fractions of the current minimum endpoint gap.

Every stage re-derives its graph from the geometry and cross-checks it
against the intended combinatorial edge set, so the concrete coordinate
scheme is validated on every build rather than trusted.
"""

from __future__ import annotations

import random
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .geometry import (
    Line,
    PermutationRep,
    Trapezoid,
    TrapezoidRep,
    graph_of_permutation_rep,
    graph_of_trapezoid_rep,
    line_left_of,
    renormalize,
    verify_rep,
)
from .graphs import Graph, components
from .orientation import PairSet
from .structure import is_standard_rep, select_anchors


@dataclass(frozen=True)
class MonotoneCnf:
    """A 3-CNF formula with no negations; clauses are strictly increasing
    variable triples over 1..n."""

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("formula needs at least one variable")
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError(f"clause {cl} does not have exactly 3 literals")
            r1, r2, r3 = cl
            if not 1 <= r1 < r2 < r3 <= self.n:
                raise ValueError(
                    f"clause {cl} is not a strictly increasing triple in 1..{self.n}"
                )

    @property
    def k(self) -> int:
        return len(self.clauses)


def parse_cnf(text: str) -> MonotoneCnf:
    """Parse DIMACS-style input restricted to positive literals, three
    per clause.  The `p cnf` header is optional; clauses are zero
    terminated and may span lines."""
    declared_n = None
    declared_k = None
    literals: list[int] = []
    clauses: list[tuple[int, int, int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed problem line: {line!r}")
            declared_n, declared_k = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if len(literals) != 3:
                    raise ValueError(
                        f"clause {literals} does not have exactly 3 literals"
                    )
                if len(set(literals)) != 3:
                    raise ValueError(f"clause {literals} repeats a variable")
                clauses.append(tuple(sorted(literals)))
                literals = []
            elif lit < 0:
                raise ValueError(f"negated literal {lit} in a monotone formula")
            else:
                literals.append(lit)
    if literals:
        raise ValueError("trailing clause without terminating 0")
    used_n = max((v for cl in clauses for v in cl), default=0)
    n = max(declared_n or 0, used_n)
    if n == 0:
        raise ValueError("formula declares no variables")
    if declared_k is not None and declared_k != len(clauses):
        raise ValueError(
            f"header declares {declared_k} clauses but {len(clauses)} found"
        )
    return MonotoneCnf(n, tuple(clauses))


def to_dimacs(cnf: MonotoneCnf) -> str:
    lines = [f"p cnf {cnf.n} {cnf.k}"]
    lines.extend(f"{a} {b} {c} 0" for a, b, c in cnf.clauses)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionArtifacts:
    """The line-gadget stage: graph, rep, merge matching, per-variable
    blocks (line ids of a variable's pairs plus its connectors), and the
    human-readable line labels."""

    cnf: MonotoneCnf
    graph: Graph
    rep: PermutationRep
    merge_pairs: PairSet
    blocks: dict[int, tuple[int, ...]]
    labels: dict[int, str]

    def block_list(self) -> list[tuple[int, ...]]:
        return [self.blocks[p] for p in sorted(self.blocks)]


# literal-position names for the high-slope and low-slope line of a pair
_HI_NAME = ("a", "e", "d")
_LO_NAME = ("c", "b", "f")


def build_line_gadget(cnf: MonotoneCnf, seed: int = 0) -> ReductionArtifacts:
    """Lay out the clause gadget lines and connectors.

    Each pair sits in its own width-8 slot: the high-slope line runs from
    slot+1 on top to slot+6 below, the low-slope line the reverse, and a
    connector pair between consecutive slots of a block puts its top
    endpoints in the right slot's top gap and its bottom endpoints in the
    left slot's bottom gap, crossing exactly the two high-slope lines.
    A nonzero seed shuffles the within-block pair order.
    """
    if cnf.k < 1:
        raise ValueError("formula has no clauses")
    occurrences: dict[int, list[tuple[int, int]]] = {p: [] for p in range(1, cnf.n + 1)}
    for i, clause in enumerate(cnf.clauses):
        for j, var in enumerate(clause):
            occurrences[var].append((i, j))
    unused = [p for p, occ in occurrences.items() if not occ]
    if unused:
        raise ValueError(f"variables never used in any clause: {unused}")
    if seed:
        for p in occurrences:
            random.Random(f"block:{seed}:{p}").shuffle(occurrences[p])

    lines: list[Line] = []
    labels: dict[int, str] = {}
    blocks: dict[int, list[int]] = {p: [] for p in occurrences}
    hi_id: dict[tuple[int, int], int] = {}
    lo_id: dict[tuple[int, int], int] = {}
    expected_edges: list[tuple[int, int]] = []
    connector_pairs: list[tuple[int, int]] = []

    slot = 0
    for p in sorted(occurrences):
        previous = None
        gap = 0
        for i, j in occurrences[p]:
            base = Fraction(8 * slot)
            hi = len(lines)
            lines.append(Line(base + 1, base + 6))
            lo = len(lines)
            lines.append(Line(base + 6, base + 1))
            hi_id[(i, j)] = hi
            lo_id[(i, j)] = lo
            labels[hi] = f"{_HI_NAME[j]}{i + 1}"
            labels[lo] = f"{_LO_NAME[j]}{i + 1}"
            blocks[p] += [hi, lo]
            expected_edges.append((hi, lo))
            if previous is not None:
                prev_hi, prev_base = previous
                gap += 1
                cu = len(lines)
                lines.append(Line(base + 3, prev_base + 3))
                cv = len(lines)
                lines.append(Line(base + 4, prev_base + 4))
                labels[cu] = f"u{p}.{gap}"
                labels[cv] = f"v{p}.{gap}"
                blocks[p] += [cu, cv]
                connector_pairs.append((cu, cv))
                expected_edges += [(cu, prev_hi), (cu, hi), (cv, prev_hi), (cv, hi)]
            previous = (hi, base)
            slot += 1

    pairs = []
    for i in range(cnf.k):
        pairs.append((hi_id[(i, 0)], lo_id[(i, 1)]))  # {a, b}
        pairs.append((lo_id[(i, 0)], hi_id[(i, 2)]))  # {c, d}
        pairs.append((hi_id[(i, 1)], lo_id[(i, 2)]))  # {e, f}
    pairs.extend(connector_pairs)

    rep = PermutationRep(lines)
    graph = graph_of_permutation_rep(rep)
    if graph.edges != Graph(len(lines), expected_edges).edges:
        raise AssertionError("gadget geometry does not match the intended edges")
    if len(components(graph, range(graph.n))) != cnf.n:
        raise AssertionError("gadget does not split into one block per variable")
    return ReductionArtifacts(
        cnf,
        graph,
        rep,
        PairSet(pairs),
        {p: tuple(sorted(ids)) for p, ids in blocks.items()},
        labels,
    )


class MergedGadget(NamedTuple):
    graph: Graph
    rep: TrapezoidRep
    labels: dict[int, str]


def build_merged_gadget(art: ReductionArtifacts) -> MergedGadget:
    """Replace each merge pair by the trapezoid having the pair's lines
    as left and right boundaries (the smaller top coordinate is left)."""
    traps = []
    labels = {}
    for idx, (x, y) in enumerate(art.merge_pairs):
        lx, ly = art.rep.lines[x], art.rep.lines[y]
        left, right = (lx, ly) if lx.top < ly.top else (ly, lx)
        if not line_left_of(left, right):
            raise AssertionError(
                f"merge pair {idx} crosses; cannot form a trapezoid"
            )
        traps.append(Trapezoid(left.top, right.top, left.bottom, right.bottom))
        labels[idx] = f"{art.labels[x]}+{art.labels[y]}"
    rep = TrapezoidRep(traps)
    return MergedGadget(graph_of_trapezoid_rep(rep), rep, labels)


class PaddedGadget(NamedTuple):
    """`rep` is renormalized to small integer ranks for downstream ordinal
    work; `raw_rep` keeps the construction coordinates, whose metric
    slack (guards far narrower than their hosts) straightening needs."""

    graph: Graph
    rep: TrapezoidRep
    raw_rep: TrapezoidRep
    labels: dict[int, str]
    originals: int


# guard offsets as multiples of the current minimum gap, per boundary line:
# (left offset, right offset) relative to the line, negative = leftward
_LEFT_GUARDS = (
    (Fraction(-1, 2), Fraction(1, 2)),
    (Fraction(-3, 4), Fraction(-1, 4)),
    (Fraction(-7, 8), Fraction(-3, 8)),
)
_RIGHT_GUARDS = (
    (Fraction(-1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4)),
    (Fraction(3, 8), Fraction(7, 8)),
)


def build_padded_gadget(
    graph: Graph,
    rep: TrapezoidRep,
    labels: dict[int, str] | None = None,
    subset: list[int] | None = None,
) -> PaddedGadget:
    """Add six guard parallelograms per padded vertex, three hugging each
    boundary line, rescaling the offset unit to the current minimum
    endpoint gap before each vertex is processed.

    By default every vertex is padded; `subset` restricts the padding,
    which is how sweep tests manufacture vertices that are guaranteed to
    be splittable and in standard position.  Postconditions checked on
    every build: only the host line's endpoint lies between a guard
    cluster's endpoints, the representation is standard with respect to
    every padded vertex, and the returned (renormalized) rep still
    induces the returned graph.
    """
    m = rep.n
    padded_ids = list(range(m)) if subset is None else list(dict.fromkeys(subset))
    for u in padded_ids:
        if not 0 <= u < m:
            raise ValueError(f"padded vertex {u} out of range")
    traps: list[Trapezoid] = list(rep.traps)
    out_labels = dict(labels) if labels else {i: f"t{i}" for i in range(m)}
    tops_sorted: list[Fraction] = sorted(
        [t.a for t in traps] + [t.b for t in traps]
    )
    bottoms_sorted: list[Fraction] = sorted(
        [t.c for t in traps] + [t.d for t in traps]
    )

    def min_gap(values: list[Fraction]) -> Fraction:
        return min(b - a for a, b in zip(values, values[1:]))

    eps = min(min_gap(tops_sorted), min_gap(bottoms_sorted))
    windows: list[tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]] = []

    def collision_free(host: Trapezoid, unit: Fraction) -> bool:
        # offsets stay below the minimum gap, so new endpoints can only
        # collide with each other (the two clusters meeting mid-gap when
        # the host's own lines sit at exactly the minimum distance)
        for coords in ((host.a, host.b), (host.c, host.d)):
            values = set()
            for center, offsets in zip(coords, (_LEFT_GUARDS, _RIGHT_GUARDS)):
                for pair in offsets:
                    for off in pair:
                        values.add(center + off * unit)
            if len(values) != 12:
                return False
        return True

    for i in padded_ids:
        host = traps[i]
        # all six guards of one vertex share the same offset unit; a
        # single halving provably clears any exact mid-gap coincidence
        unit = eps
        if not collision_free(host, unit):
            unit = eps / 2
            if not collision_free(host, unit):
                raise AssertionError("guard offsets collide at both units")
        role = 0
        for line, offsets in (
            (Line(host.a, host.c), _LEFT_GUARDS),
            (Line(host.b, host.d), _RIGHT_GUARDS),
        ):
            lo_off = min(o for pair in offsets for o in pair)
            hi_off = max(o for pair in offsets for o in pair)
            windows.append(
                (
                    line.top + lo_off * unit,
                    line.top,
                    line.top + hi_off * unit,
                    line.bottom + lo_off * unit,
                    line.bottom,
                    line.bottom + hi_off * unit,
                )
            )
            for left_off, right_off in offsets:
                guard = Trapezoid(
                    line.top + left_off * unit,
                    line.top + right_off * unit,
                    line.bottom + left_off * unit,
                    line.bottom + right_off * unit,
                )
                role += 1
                out_labels[len(traps)] = f"{out_labels[i]}:g{role}"
                traps.append(guard)
                for value, target in (
                    (guard.a, tops_sorted),
                    (guard.b, tops_sorted),
                    (guard.c, bottoms_sorted),
                    (guard.d, bottoms_sorted),
                ):
                    insort(target, value)
                    at = bisect_left(target, value)
                    if at > 0:
                        eps = min(eps, value - target[at - 1])
                    if at + 1 < len(target):
                        eps = min(eps, target[at + 1] - value)

    padded = TrapezoidRep(traps)
    # each guard cluster owns five interior endpoints per rail: four of
    # its own plus the host line's one; anything else is foreign
    for t_lo, t_mid, t_hi, b_lo, b_mid, b_hi in windows:
        inside_top = [v for v in tops_sorted if t_lo < v < t_hi]
        inside_bottom = [v for v in bottoms_sorted if b_lo < v < b_hi]
        if len(inside_top) != 5 or t_mid not in inside_top:
            raise AssertionError("foreign endpoint inside a guard window (top)")
        if len(inside_bottom) != 5 or b_mid not in inside_bottom:
            raise AssertionError("foreign endpoint inside a guard window (bottom)")

    out_graph = graph_of_trapezoid_rep(padded)
    normalized = renormalize(padded)
    ok, mismatch = verify_rep(normalized, out_graph)
    if not ok:
        raise AssertionError(f"renormalization changed the graph at {mismatch}")
    for i in padded_ids:
        anchors = select_anchors(out_graph, i)
        if anchors.opposite is None:
            raise AssertionError(
                f"padded vertex {i} lost its nonempty closure complement"
            )
        if not is_standard_rep(out_graph, normalized, i):
            raise AssertionError(f"padded rep is not standard for vertex {i}")
    return PaddedGadget(out_graph, normalized, padded, out_labels, m)
