from fractions import Fraction

import pytest

from tolgraphs.geometry import (
    graph_of_permutation_rep,
    verify_rep,
)
from tolgraphs.graphs import components
from tolgraphs.oracles import random_monotone_cnf, worked_example_formula
from tolgraphs.orientation import slope_key
from tolgraphs.reduction import (
    MonotoneCnf,
    build_line_gadget,
    build_merged_gadget,
    build_padded_gadget,
    parse_cnf,
    to_dimacs,
)

WORKED = "p cnf 4 3\n1 2 3 0\n2 3 4 0\n1 2 4 0\n"


def test_parse_single_clause():
    cnf = parse_cnf("1 2 3 0")
    assert cnf == MonotoneCnf(3, ((1, 2, 3),))


def test_parse_worked_example():
    cnf = parse_cnf(WORKED)
    assert cnf.k == 3 and cnf.n == 4
    assert cnf == worked_example_formula()
    assert parse_cnf(to_dimacs(cnf)) == cnf


def test_parse_accepts_headerless_and_comments():
    cnf = parse_cnf("c comment\n1 2 3 0 2 3 4 0")
    assert cnf.k == 2 and cnf.n == 4


def test_parse_rejects_negation():
    with pytest.raises(ValueError):
        parse_cnf("1 -2 3 0")


def test_parse_rejects_bad_arity():
    with pytest.raises(ValueError):
        parse_cnf("1 2 0")
    with pytest.raises(ValueError):
        parse_cnf("1 2 3 4 0")


def test_parse_rejects_repeated_variable():
    with pytest.raises(ValueError):
        parse_cnf("1 1 2 0")


def test_parse_rejects_header_mismatch():
    with pytest.raises(ValueError):
        parse_cnf("p cnf 3 2\n1 2 3 0")


def test_parse_rejects_trailing_clause():
    with pytest.raises(ValueError):
        parse_cnf("1 2 3")


def test_clauses_sorted_ascending():
    assert parse_cnf("3 1 2 0").clauses == ((1, 2, 3),)


def test_build_rejects_unused_variable():
    with pytest.raises(ValueError):
        build_line_gadget(MonotoneCnf(4, ((1, 2, 3),)))


def test_worked_example_counts():
    art = build_line_gadget(worked_example_formula())
    assert art.graph.n == 28  # 12k - 2n
    connectors = [i for i, lbl in art.labels.items() if lbl[0] in "uv"]
    assert len(connectors) == 10  # 6k - 2n
    assert len(art.merge_pairs) == 14  # 6k - n


def test_single_clause_counts():
    art = build_line_gadget(MonotoneCnf(3, ((1, 2, 3),)))
    assert art.graph.n == 6
    assert not [l for l in art.labels.values() if l[0] in "uv"]
    assert len(art.merge_pairs) == 3


def test_counting_identities_on_random_formulas():
    for seed in range(12):
        n = 3 + seed % 4
        k = max((n + 2) // 3, 1 + seed % 5)
        cnf = random_monotone_cnf(n, k, seed)
        art = build_line_gadget(cnf)
        assert art.graph.n == 12 * k - 2 * n
        connectors = [i for i, lbl in art.labels.items() if lbl[0] in "uv"]
        assert len(connectors) == 6 * k - 2 * n
        assert len(art.merge_pairs) == 6 * k - n
        merged = build_merged_gadget(art)
        padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
        assert padded.graph.n == 7 * (6 * k - n)


def test_blocks_are_the_connected_components():
    art = build_line_gadget(worked_example_formula())
    parts = components(art.graph, range(art.graph.n))
    assert len(parts) == art.cnf.n
    assert sorted(map(tuple, art.block_list())) == sorted(map(tuple, parts))


def test_block_sizes_worked_example():
    art = build_line_gadget(worked_example_formula())
    assert {p: len(b) for p, b in art.blocks.items()} == {1: 6, 2: 10, 3: 6, 4: 6}


def test_gadget_edge_structure():
    art = build_line_gadget(worked_example_formula())
    g = art.graph
    by_label = {lbl: i for i, lbl in art.labels.items()}
    # each literal pair crosses
    for i in range(1, 4):
        assert g.has_edge(by_label[f"a{i}"], by_label[f"c{i}"])
        assert g.has_edge(by_label[f"e{i}"], by_label[f"b{i}"])
        assert g.has_edge(by_label[f"d{i}"], by_label[f"f{i}"])
    # connectors touch exactly two high-slope lines and never each other
    for i, lbl in art.labels.items():
        if lbl[0] not in "uv":
            continue
        neigh = g.neighbors(i)
        assert len(neigh) == 2
        assert all(art.labels[x][0] in "aed" for x in neigh)
        partner = by_label[("v" if lbl[0] == "u" else "u") + lbl[1:]]
        assert not g.has_edge(i, partner)


def test_gadget_slope_relations():
    art = build_line_gadget(worked_example_formula())
    by_label = {lbl: i for i, lbl in art.labels.items()}
    lines = art.rep.lines
    for i in range(1, 4):
        assert slope_key(lines[by_label[f"a{i}"]]) > slope_key(lines[by_label[f"c{i}"]])
        assert slope_key(lines[by_label[f"e{i}"]]) > slope_key(lines[by_label[f"b{i}"]])
        assert slope_key(lines[by_label[f"d{i}"]]) > slope_key(lines[by_label[f"f{i}"]])
    for i, lbl in art.labels.items():
        if lbl[0] != "u":
            continue
        partner = by_label["v" + lbl[1:]]
        assert slope_key(lines[i]) == slope_key(lines[partner])
        for hi in art.graph.neighbors(i):
            assert slope_key(lines[hi]) > slope_key(lines[i])


def test_gadget_graph_matches_geometry():
    art = build_line_gadget(worked_example_formula())
    assert graph_of_permutation_rep(art.rep) == art.graph


def test_gadget_orientation_is_transitive():
    from tolgraphs.orientation import check_transitive, transitive_orientation

    art = build_line_gadget(worked_example_formula())
    assert check_transitive(transitive_orientation(art.rep))


def test_merge_pairs_do_not_cross():
    art = build_line_gadget(worked_example_formula())
    for x, y in art.merge_pairs:
        assert not art.graph.has_edge(x, y)


def test_seeded_block_order_still_valid():
    art = build_line_gadget(worked_example_formula(), seed=5)
    assert art.graph.n == 28
    assert len(art.merge_pairs) == 14
    base = build_line_gadget(worked_example_formula())
    # slots carry fixed template coordinates, so the shuffle reassigns
    # which literal occupies which slot rather than moving lines
    assert base.labels != art.labels
    assert base.merge_pairs != art.merge_pairs


def test_merged_gadget_worked_example():
    art = build_line_gadget(worked_example_formula())
    merged = build_merged_gadget(art)
    assert merged.graph.n == 14
    assert verify_rep(merged.rep, merged.graph) == (True, None)
    for (x, y), trap in zip(art.merge_pairs, merged.rep.traps):
        lx, ly = art.rep.lines[x], art.rep.lines[y]
        left = lx if lx.top < ly.top else ly
        assert trap.a == left.top and trap.c == left.bottom


def test_merged_gadget_single_clause():
    art = build_line_gadget(MonotoneCnf(3, ((1, 2, 3),)))
    assert build_merged_gadget(art).graph.n == 3


def test_padded_gadget_worked_example():
    art = build_line_gadget(worked_example_formula())
    merged = build_merged_gadget(art)
    padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
    assert padded.graph.n == 98  # 7m
    assert padded.originals == 14
    assert verify_rep(padded.rep, padded.graph) == (True, None)


def test_padded_gadget_single_clause():
    art = build_line_gadget(MonotoneCnf(3, ((1, 2, 3),)))
    merged = build_merged_gadget(art)
    padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
    assert padded.graph.n == 21


def test_padded_guards_are_parallelograms():
    art = build_line_gadget(MonotoneCnf(3, ((1, 2, 3),)))
    merged = build_merged_gadget(art)
    padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
    for guard in padded.raw_rep.traps[padded.originals :]:
        assert guard.a - guard.c == guard.b - guard.d


def test_padded_rep_renormalized_rank_bound():
    art = build_line_gadget(worked_example_formula())
    merged = build_merged_gadget(art)
    padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
    m = padded.graph.n
    tops = [t.a for t in padded.rep.traps] + [t.b for t in padded.rep.traps]
    bottoms = [t.c for t in padded.rep.traps] + [t.d for t in padded.rep.traps]
    assert max(tops) == Fraction(2 * m) and max(bottoms) == Fraction(2 * m)
    assert min(tops) == 1 and min(bottoms) == 1


def test_seeded_block_order_keeps_certificates():
    """The within-block pair order is a free choice: certificate flips
    must stay acyclic for shuffled layouts too."""
    from dataclasses import replace

    from tolgraphs.geometry import flip_blocks
    from tolgraphs.oracles import assignment_to_flips, nae_sat_bruteforce
    from tolgraphs.orientation import is_acyclic_wrt_pairs

    cnf = worked_example_formula()
    sat = nae_sat_bruteforce(cnf)
    for seed in (1, 2, 3, 7):
        art = build_line_gadget(cnf, seed=seed)
        blocks = art.block_list()
        cert = assignment_to_flips(cnf, sat)
        flipped = flip_blocks(art.rep, [blocks[v - 1] for v in cert])
        assert is_acyclic_wrt_pairs(flipped, art.merge_pairs).acyclic


def test_padded_guard_labels():
    art = build_line_gadget(MonotoneCnf(3, ((1, 2, 3),)))
    merged = build_merged_gadget(art)
    padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
    assert padded.labels[padded.originals] == merged.labels[0] + ":g1"
    assert padded.labels[padded.originals + 5] == merged.labels[0] + ":g6"
