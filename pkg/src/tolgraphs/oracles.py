"""Exhaustive ground truth and fixtures.

Everything here is deliberately brute force: assignment enumeration for
NAE satisfiability, edge-direction backtracking with forcing propagation
for comparability, seeded generators for the property sweeps, and the
end-to-end equivalence report tying the formula side to the geometry
side.  Hard size guards raise instead of silently truncating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

from ._core import nae_smallest
from .geometry import (
    ParallelogramRep,
    ToleranceRep,
    TrapezoidRep,
    flip_blocks,
    graph_of_trapezoid_rep,
    verify_rep,
)
from .graphs import Graph, GuardExceeded, complement, labeled_equal
from .orientation import (
    Orientation,
    PairSet,
    find_acyclic_flip,
    is_acyclic_wrt_pairs,
    parallelogramize,
)
from .reduction import (
    MonotoneCnf,
    build_line_gadget,
    build_merged_gadget,
    build_padded_gadget,
)

NAE_GUARD = 24
COMPARABILITY_GUARD = 24
EQUIVALENCE_GUARD_N = 10
EQUIVALENCE_GUARD_K = 8

Assignment = tuple[int, ...]


def nae_satisfies(cnf: MonotoneCnf, assignment: Assignment) -> bool:
    """Every clause sees at least one true and one false variable."""
    if len(assignment) != cnf.n:
        raise ValueError(f"assignment length {len(assignment)} != n={cnf.n}")
    for r1, r2, r3 in cnf.clauses:
        total = assignment[r1 - 1] + assignment[r2 - 1] + assignment[r3 - 1]
        if total in (0, 3):
            return False
    return True


def nae_sat_bruteforce(cnf: MonotoneCnf) -> Assignment | None:
    """Lexicographically smallest NAE-satisfying assignment, or None
    after exhausting all 2^n."""
    if cnf.n > NAE_GUARD:
        raise GuardExceeded(f"n={cnf.n} exceeds the enumeration guard {NAE_GUARD}")
    bits = [(cnf.n - r1, cnf.n - r2, cnf.n - r3) for r1, r2, r3 in cnf.clauses]
    found = nae_smallest(cnf.n, bits)
    if found < 0:
        return None
    return tuple((found >> (cnf.n - v)) & 1 for v in range(1, cnf.n + 1))


def assignment_to_flips(cnf: MonotoneCnf, assignment: Assignment) -> tuple[int, ...]:
    """Variables assigned false, i.e. the blocks to rail-swap; the
    convention is anchored to the certificate direction of the
    equivalence (false means flipped)."""
    if len(assignment) != cnf.n:
        raise ValueError(f"assignment length {len(assignment)} != n={cnf.n}")
    return tuple(v for v in range(1, cnf.n + 1) if not assignment[v - 1])


def find_smallest_nae_unsat(max_n: int = 5) -> MonotoneCnf | None:
    """First monotone 3-CNF with no NAE assignment, enumerating by
    variable count, then clause count, then lexicographic clause list."""
    for n in range(3, max_n + 1):
        triples = sorted(combinations(range(1, n + 1), 3))
        for k in range(1, len(triples) + 1):
            for chosen in combinations(triples, k):
                cnf = MonotoneCnf(n, chosen)
                if nae_sat_bruteforce(cnf) is None:
                    return cnf
    return None


def unsat_fixture() -> MonotoneCnf:
    """The frozen mechanically discovered NAE-unsatisfiable formula:
    all ten triples over five variables (re-derived by the test suite)."""
    return MonotoneCnf(5, tuple(sorted(combinations(range(1, 6), 3))))


@dataclass(frozen=True)
class GraphFixture:
    graph: Graph
    labels: dict[int, str]
    by_name: dict[str, int]


def four_component_fixture() -> GraphFixture:
    """Eight-vertex graph whose hub u leaves four singleton components
    with nested boundaries; adjacencies among u1,u2,u3 intentionally
    absent (every anchored quantity depends only on the v-to-u edges)."""
    names = ["u", "u1", "u2", "u3", "v1", "v2", "v3", "v4"]
    by_name = {name: i for i, name in enumerate(names)}
    edge_names = [
        ("u", "u1"),
        ("u", "u2"),
        ("u", "u3"),
        ("u1", "v1"),
        ("u1", "v2"),
        ("u3", "v2"),
        ("u2", "v3"),
        ("u3", "v3"),
        ("u3", "v4"),
    ]
    g = Graph(8, [(by_name[a], by_name[b]) for a, b in edge_names])
    return GraphFixture(g, dict(enumerate(names)), by_name)


@dataclass(frozen=True)
class RepFixture:
    rep: TrapezoidRep
    graph: Graph
    labels: dict[int, str]
    by_name: dict[str, int]


def straddling_rep_fixture() -> RepFixture:
    """Frozen trapezoid rep (same vertex names as the four-component
    fixture, plus edges u1-u3 and u2-u3) where the master component of u
    lies completely left of u's trapezoid yet another member of its
    domination closure lies completely right.

    This is the regression against the flawed claim that the whole
    closure sits on the master's side.
    """
    names = ["u", "u1", "u2", "u3", "v1", "v2", "v3", "v4"]
    by_name = {name: i for i, name in enumerate(names)}
    boxes = {
        "u": (10, 16),
        "u1": (1, 11),
        "u2": (12, 19),
        "u3": (5, 22),
        "v1": (0, 2),
        "v2": (4, 6),
        "v3": (18, 20),
        "v4": (21, 23),
    }
    rep = ParallelogramRep(
        [(boxes[nm][0], boxes[nm][1], boxes[nm][0], boxes[nm][1]) for nm in names]
    )
    return RepFixture(
        rep, graph_of_trapezoid_rep(rep), dict(enumerate(names)), by_name
    )


def is_comparability(g: Graph) -> Orientation | None:
    """A transitive orientation found by edge-direction backtracking with
    forcing propagation, or None.

    Orienting x->y forces x->w whenever w neighbors x but not y (w->x
    would need w->y), and symmetrically w->y for neighbors of y missed
    by x.  Complete candidates are verified by a full triple scan, so
    the search is exact.
    """
    if g.n > COMPARABILITY_GUARD:
        raise GuardExceeded(
            f"n={g.n} exceeds the backtracking guard {COMPARABILITY_GUARD}"
        )
    edges = g.sorted_edges()

    def close(assignments: dict, a: int, b: int) -> bool:
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            key = (x, y) if x < y else (y, x)
            cur = assignments.get(key)
            if cur == (x, y):
                continue
            if cur is not None:
                return False
            assignments[key] = (x, y)
            for w in g.neighbors(x):
                if w != y and not g.has_edge(w, y):
                    stack.append((x, w))
            for w in g.neighbors(y):
                if w != x and not g.has_edge(w, x):
                    stack.append((w, y))
        return True

    def pick_edge(assignments: dict) -> tuple[int, int] | None:
        touched = {v for arc in assignments.values() for v in arc}
        fallback = None
        for e in edges:
            if e in assignments:
                continue
            if e[0] in touched or e[1] in touched:
                return e
            if fallback is None:
                fallback = e
        return fallback

    def transitive(assignments: dict) -> bool:
        succ: dict[int, set[int]] = {}
        for x, y in assignments.values():
            succ.setdefault(x, set()).add(y)
        for x, ys in succ.items():
            for y in ys:
                for z in succ.get(y, ()):
                    if z not in ys:
                        return False
        return True

    def search(assignments: dict) -> dict | None:
        e = pick_edge(assignments)
        if e is None:
            return assignments if transitive(assignments) else None
        for direction in (e, (e[1], e[0])):
            trial = dict(assignments)
            if close(trial, *direction):
                result = search(trial)
                if result is not None:
                    return result
        return None

    result = search({})
    if result is None:
        return None
    return Orientation(g.n, result.values())


def is_permutation_graph(g: Graph) -> bool:
    """Permutation graphs are exactly the graphs where both the graph and
    its complement are transitively orientable."""
    return is_comparability(g) is not None and is_comparability(complement(g)) is not None


def random_parallelogram_rep(n: int, seed: int) -> ParallelogramRep:
    """Deterministic per seed; the endpoint pairing style varies with the
    seed (disjoint-leaning, nested-leaning, or fully random) so the
    induced graphs sweep the density range."""
    if n < 1:
        raise ValueError("need at least one parallelogram")
    rng = random.Random(f"para:{n}:{seed}")
    span = rng.choice((2, 4, 16)) * n
    values = sorted(Fraction(v) for v in rng.sample(range(4 * span), 2 * n))
    style = rng.choice(("adjacent", "nested", "random"))
    if style == "adjacent":
        tops = values  # consecutive duos: mostly disjoint slots
        disp_span = max(span // (2 * n), 2)
    elif style == "nested":
        tops = [None] * (2 * n)
        tops[0::2] = values[:n]
        tops[1::2] = values[n:]  # every pair straddles the middle
        disp_span = span
    else:
        tops = list(values)
        rng.shuffle(tops)
        disp_span = span
    while True:
        disp = [
            Fraction(rng.randint(-disp_span, disp_span), rng.randint(1, 4))
            for _ in range(n)
        ]
        bottoms = set()
        for v in range(n):
            bottoms.add(tops[2 * v] - disp[v])
            bottoms.add(tops[2 * v + 1] - disp[v])
        if len(bottoms) == 2 * n:
            break
    traps = []
    for v in range(n):
        a, b = sorted((tops[2 * v], tops[2 * v + 1]))
        traps.append((a, b, a - disp[v], b - disp[v]))
    return ParallelogramRep(traps)


def random_trapezoid_rep(n: int, seed: int) -> TrapezoidRep:
    if n < 1:
        raise ValueError("need at least one trapezoid")
    rng = random.Random(f"trap:{n}:{seed}")
    tops = rng.sample(range(8 * n), 2 * n)
    bottoms = rng.sample(range(8 * n), 2 * n)
    traps = []
    for v in range(n):
        a, b = sorted(tops[2 * v : 2 * v + 2])
        c, d = sorted(bottoms[2 * v : 2 * v + 2])
        traps.append((a, b, c, d))
    return TrapezoidRep(traps)


def random_bounded_tolerance_rep(n: int, seed: int) -> ToleranceRep:
    """Bounded by construction; occasionally emits the extreme t == |I|
    to exercise the degenerate conversion path."""
    if n < 1:
        raise ValueError("need at least one interval")
    rng = random.Random(f"tol:{n}:{seed}")
    points = sorted(rng.sample(range(8 * n), 2 * n))
    rng.shuffle(points)
    intervals = []
    for v in range(n):
        l, r = sorted(points[2 * v : 2 * v + 2])
        length = Fraction(r - l)
        if rng.random() < 1 / 6:
            t = length
        else:
            t = min(length, Fraction(rng.randint(1, 8 * n), rng.randint(1, 4)))
        intervals.append((Fraction(l), Fraction(r), t))
    return ToleranceRep(intervals)


def random_padded_parallelogram_rep(
    n: int, pads: int, seed: int
) -> tuple[ParallelogramRep, tuple[int, ...]]:
    """A random parallelogram rep in which `pads` chosen vertices carry
    guard clusters, making them splittable (nonempty closure complement)
    and standard by construction; returns the rep and those vertex ids.

    Guards are parallelograms parallel to parallelogram boundary lines,
    so the padded rep is again a parallelogram rep.
    """
    if not 1 <= pads <= n:
        raise ValueError("pads must be between 1 and n")
    rng = random.Random(f"padded:{n}:{pads}:{seed}")
    base = random_parallelogram_rep(n, seed)
    chosen = sorted(rng.sample(range(n), pads))
    padded = build_padded_gadget(
        graph_of_trapezoid_rep(base), base, subset=chosen
    )
    return ParallelogramRep(padded.raw_rep.traps), tuple(chosen)


def random_monotone_cnf(n: int, k: int, seed: int) -> MonotoneCnf:
    """Random formula in which every variable occurs (hence 3k >= n)."""
    if n < 3:
        raise ValueError("need at least three variables")
    if 3 * k < n:
        raise ValueError(f"{k} clauses cannot cover {n} variables")
    rng = random.Random(f"cnf:{n}:{k}:{seed}")
    while True:
        clauses = tuple(
            tuple(sorted(rng.sample(range(1, n + 1), 3))) for _ in range(k)
        )
        if {v for cl in clauses for v in cl} == set(range(1, n + 1)):
            return MonotoneCnf(n, clauses)


class _ParityUnionFind:
    """Union-find over boolean swap variables with xor relations and
    forced values; drives the pair-respecting isomorphism matcher."""

    def __init__(self, m: int) -> None:
        self.parent = list(range(m))
        self.offset = [0] * m  # parity to parent
        self.forced: dict[int, int] = {}

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        parity = 0
        for node in reversed(path):
            parity ^= self.offset[node]
            self.parent[node] = x
            self.offset[node] = parity
        return x, parity

    def force(self, x: int, value: int) -> bool:
        root, parity = self.find(x)
        want = value ^ parity
        if root in self.forced:
            return self.forced[root] == want
        self.forced[root] = want
        return True

    def relate(self, x: int, y: int, rel: int) -> bool:
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        self.parent[ry] = rx
        self.offset[ry] = px ^ py ^ rel
        fy = self.forced.pop(ry, None)
        if fy is not None:
            return self.force(ry, fy)
        return True

    def value(self, x: int) -> int:
        root, parity = self.find(x)
        return self.forced.get(root, 0) ^ parity


def match_paired_graphs(
    g1: Graph, pairs1: PairSet, g2: Graph, pairs2: PairSet
) -> dict[int, int] | None:
    """A bijection g1 -> g2 mapping pair i onto pair i (pairs may swap
    internally) that is a graph isomorphism, or None.

    For each pair of pairs the 2x2 adjacency pattern constrains the two
    swap choices to a coset of the Klein four-group, so constraint
    propagation over xor relations decides the search without
    backtracking; the lexicographically smallest solution is returned.
    """
    m = len(pairs1)
    if len(pairs2) != m or g1.n != 2 * m or g2.n != 2 * m:
        raise ValueError("graphs must have one pair per two vertices")
    for i in range(m):
        if g1.has_edge(*pairs1[i]) != g2.has_edge(*pairs2[i]):
            return None

    def pattern(g: Graph, pairs: PairSet, i: int, j: int, si: int, sj: int):
        xi = pairs[i] if not si else pairs[i][::-1]
        xj = pairs[j] if not sj else pairs[j][::-1]
        return (
            g.has_edge(xi[0], xj[0]),
            g.has_edge(xi[0], xj[1]),
            g.has_edge(xi[1], xj[0]),
            g.has_edge(xi[1], xj[1]),
        )

    uf = _ParityUnionFind(m)
    for i in range(m):
        for j in range(i + 1, m):
            target = pattern(g2, pairs2, i, j, 0, 0)
            allowed = [
                (si, sj)
                for si in (0, 1)
                for sj in (0, 1)
                if pattern(g1, pairs1, i, j, si, sj) == target
            ]
            if not allowed:
                return None
            if len(allowed) == 4:
                continue
            if len(allowed) == 1:
                (si, sj) = allowed[0]
                if not (uf.force(i, si) and uf.force(j, sj)):
                    return None
            elif len(allowed) == 2:
                first_vals = {a for a, _ in allowed}
                second_vals = {b for _, b in allowed}
                if len(first_vals) == 1:
                    if not uf.force(i, next(iter(first_vals))):
                        return None
                elif len(second_vals) == 1:
                    if not uf.force(j, next(iter(second_vals))):
                        return None
                else:
                    rel = allowed[0][0] ^ allowed[0][1]
                    if not uf.relate(i, j, rel):
                        return None
            else:
                raise AssertionError("pattern stabilizer of impossible size")

    mapping: dict[int, int] = {}
    for i in range(m):
        si = uf.value(i)
        mapping[pairs1[i][0]] = pairs2[i][si]
        mapping[pairs1[i][1]] = pairs2[i][1 - si]
    if not labeled_equal(g1, g2, mapping):
        return None
    return mapping


@dataclass(frozen=True)
class EquivalenceReport:
    """All booleans of the formula-versus-geometry equivalence check.

    The flip search certifies acyclicity only over whole-block rail
    swaps; the converse direction (flip found implies satisfiable) is
    reported as observed agreement, not assumed.
    """

    n: int
    k: int
    sat_assignment: Assignment | None
    flip_variables: tuple[int, ...] | None
    certificate_variables: tuple[int, ...] | None
    certificate_acyclic: bool | None
    padded_graph_stable: bool | None
    parallelogram_ok: bool | None

    @property
    def satisfiable(self) -> bool:
        return self.sat_assignment is not None

    @property
    def flip_found(self) -> bool:
        return self.flip_variables is not None

    @property
    def consistent(self) -> bool:
        if self.satisfiable != self.flip_found:
            return False
        if self.satisfiable:
            return bool(
                self.certificate_acyclic
                and self.padded_graph_stable
                and self.parallelogram_ok
            )
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "satisfiable": self.satisfiable,
            "sat_assignment": list(self.sat_assignment)
            if self.sat_assignment
            else None,
            "flip_variables": list(self.flip_variables)
            if self.flip_variables is not None
            else None,
            "certificate_variables": list(self.certificate_variables)
            if self.certificate_variables is not None
            else None,
            "certificate_acyclic": self.certificate_acyclic,
            "padded_graph_stable": self.padded_graph_stable,
            "parallelogram_ok": self.parallelogram_ok,
            "consistent": self.consistent,
        }


def check_equivalence(cnf: MonotoneCnf) -> EquivalenceReport:
    """Cross-check NAE satisfiability against the geometry.

    Computes (i) brute-force satisfiability, (ii) whether some block
    flip subset makes the line gadget acyclic, and, for satisfiable
    formulas, (iii) that the assignment's false-variable flips give an
    acyclic certificate and that straightening the correspondingly
    rebuilt padded rep yields a verified parallelogram rep of the padded
    graph.  A satisfiable formula failing (ii) or (iii) raises: that
    would contradict the equivalence this artifact exists to exercise.
    """
    if cnf.n > EQUIVALENCE_GUARD_N or cnf.k > EQUIVALENCE_GUARD_K:
        raise GuardExceeded(
            f"formula n={cnf.n}, k={cnf.k} exceeds desk guards "
            f"({EQUIVALENCE_GUARD_N}, {EQUIVALENCE_GUARD_K})"
        )
    art = build_line_gadget(cnf)
    blocks = art.block_list()
    sat = nae_sat_bruteforce(cnf)
    flip = find_acyclic_flip(art.rep, art.merge_pairs, blocks)
    flip_vars = tuple(i + 1 for i in flip) if flip is not None else None

    cert_vars = None
    cert_acyclic = None
    padded_stable = None
    para_ok = None
    if sat is not None:
        cert_vars = assignment_to_flips(cnf, sat)
        flipped_rep = flip_blocks(art.rep, [blocks[v - 1] for v in cert_vars])
        cert_acyclic = is_acyclic_wrt_pairs(flipped_rep, art.merge_pairs).acyclic
        merged = build_merged_gadget(art)
        padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
        flipped_art = replace(art, rep=flipped_rep)
        merged_flipped = build_merged_gadget(flipped_art)
        padded_flipped = build_padded_gadget(
            merged_flipped.graph, merged_flipped.rep, merged_flipped.labels
        )
        padded_stable = (
            merged_flipped.graph == merged.graph
            and padded_flipped.graph == padded.graph
        )
        para = parallelogramize(padded_flipped.raw_rep)
        para_ok = para is not None and verify_rep(para, padded.graph)[0]
        if not (cert_acyclic and padded_stable and para_ok):
            raise AssertionError(
                f"satisfiable formula {cnf} failed its geometric certificate: "
                f"acyclic={cert_acyclic} stable={padded_stable} para={para_ok}"
            )
    return EquivalenceReport(
        cnf.n,
        cnf.k,
        sat,
        flip_vars,
        cert_vars,
        cert_acyclic,
        padded_stable,
        para_ok,
    )


def worked_example_formula() -> MonotoneCnf:
    """The running three-clause, four-variable example used across the
    test suite: (x1|x2|x3) & (x2|x3|x4) & (x1|x2|x4)."""
    return MonotoneCnf(4, ((1, 2, 3), (2, 3, 4), (1, 2, 4)))
