import json

import pytest

from tolgraphs.cli import main
from tolgraphs.geometry import (
    ParallelogramRep,
    dump_rep,
    graph_of_trapezoid_rep,
    load_rep,
    rep_to_json,
)
from tolgraphs.graphs import Graph, dump_graph, load_graph
from tolgraphs.oracles import (
    four_component_fixture,
    unsat_fixture,
    worked_example_formula,
)
from tolgraphs.orientation import split_into_lines
from tolgraphs.reduction import to_dimacs

WORKED = to_dimacs(worked_example_formula())


@pytest.fixture()
def cnf_file(tmp_path):
    path = tmp_path / "f.cnf"
    path.write_text(WORKED)
    return path


def test_reduce_pphi(tmp_path, cnf_file, capsys):
    out = tmp_path / "out"
    code = main(
        ["reduce", "--cnf", str(cnf_file), "--emit", "pphi", "--out", str(out), "--dot"]
    )
    assert code == 0
    g, labels = load_graph(out / "pphi.graph.json")
    assert g.n == 28
    assert labels and set(labels.values()) >= {"a1", "c1"}
    assert load_rep(out / "pphi.rep.json").n == 28
    blocks = json.loads((out / "blocks.json").read_text())
    assert sorted(blocks) == ["1", "2", "3", "4"]
    pairs = json.loads((out / "merge_pairs.json").read_text())
    assert len(pairs) == 14
    assert (out / "pphi.dot").read_text().startswith("graph {")


def test_reduce_gphi_and_hphi(tmp_path, cnf_file):
    for stage, expected in (("gphi", 14), ("hphi", 98)):
        out = tmp_path / stage
        assert main(
            ["reduce", "--cnf", str(cnf_file), "--emit", stage, "--out", str(out)]
        ) == 0
        g, _ = load_graph(out / f"{stage}.graph.json")
        assert g.n == expected


def test_reduce_is_byte_deterministic(tmp_path, cnf_file):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        main(["reduce", "--cnf", str(cnf_file), "--emit", "pphi", "--out", str(out)])
    assert (out1 / "pphi.graph.json").read_bytes() == (out2 / "pphi.graph.json").read_bytes()
    assert (out1 / "pphi.rep.json").read_bytes() == (out2 / "pphi.rep.json").read_bytes()


def test_nae_sat_exit_codes(tmp_path, cnf_file, capsys):
    assert main(["nae-sat", "--cnf", str(cnf_file)]) == 0
    assert capsys.readouterr().out.strip() == "0 0 1 1"
    unsat = tmp_path / "u.cnf"
    unsat.write_text(to_dimacs(unsat_fixture()))
    assert main(["nae-sat", "--cnf", str(unsat)]) == 1
    assert capsys.readouterr().out.strip() == "UNSAT"


def test_check_equivalence_cli(cnf_file, capsys):
    assert main(["check-equivalence", "--cnf", str(cnf_file), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["consistent"] is True


def test_verify_rep_cli(tmp_path, capsys):
    rep = ParallelogramRep([(0, 1, 0, 1), (2, 3, 2, 3)])
    rep_path = tmp_path / "rep.json"
    dump_rep(rep, rep_path)
    good = tmp_path / "good.json"
    dump_graph(graph_of_trapezoid_rep(rep), good)
    assert main(["verify-rep", "--rep", str(rep_path), "--graph", str(good)]) == 0
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    dump_graph(Graph(2, [(0, 1)]), bad)
    assert main(["verify-rep", "--rep", str(rep_path), "--graph", str(bad)]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["mismatch"] == [0, 1]


def test_check_acyclic_cli(tmp_path, capsys):
    rep = ParallelogramRep([(0, 4, 1, 5), (2, 6, 3, 7)])
    lines, pairs = split_into_lines(rep)
    rep_path = tmp_path / "lines.json"
    dump_rep(lines, rep_path)
    pairs_path = tmp_path / "pairs.json"
    pairs_path.write_text(json.dumps(pairs.to_json()))
    assert main(
        ["check-acyclic", "--rep", str(rep_path), "--pairs", str(pairs_path)]
    ) == 0
    assert json.loads(capsys.readouterr().out)["acyclic"] is True
    # intra-pair crossing: a loop, hence cyclic
    crossing = tmp_path / "crossing.json"
    crossing.write_text(
        json.dumps({"lines": {"0": {"top": "0", "bottom": "1"}, "1": {"top": "1", "bottom": "0"}}})
    )
    one_pair = tmp_path / "one_pair.json"
    one_pair.write_text(json.dumps([[0, 1]]))
    assert main(
        ["check-acyclic", "--rep", str(crossing), "--pairs", str(one_pair)]
    ) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["acyclic"] is False and payload["witness"] == [0]


def test_structure_cli(tmp_path, capsys):
    fx = four_component_fixture()
    path = tmp_path / "g.json"
    dump_graph(fx.graph, path, fx.labels)
    assert main(["structure", "--graph", str(path), "--vertex", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["masters"] == [1]
    assert payload["closures"][1] == [0, 1, 3]
    assert payload["partition"]["both"] == [fx.by_name["u3"]]


def test_recognize_cli(tmp_path, capsys):
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    c5_path = tmp_path / "c5.json"
    dump_graph(c5, c5_path)
    assert main(
        ["recognize", "--graph", str(c5_path), "--class", "comparability"]
    ) == 1
    assert json.loads(capsys.readouterr().out)["is_member"] is False
    k3 = tmp_path / "k3.json"
    dump_graph(Graph(3, [(0, 1), (1, 2), (0, 2)]), k3)
    assert main(["recognize", "--graph", str(k3), "--class", "permutation"]) == 0


def test_convert_cli(tmp_path, capsys):
    tol = tmp_path / "tol.json"
    tol.write_text(
        json.dumps({"intervals": {"0": {"l": "0", "r": "10", "t": "3"}}})
    )
    out = tmp_path / "para.json"
    assert main(
        ["convert", "--rep", str(tol), "--to", "parallelogram", "--out", str(out)]
    ) == 0
    para = load_rep(out)
    assert isinstance(para, ParallelogramRep)
    back = tmp_path / "tol2.json"
    assert main(
        ["convert", "--rep", str(out), "--to", "tolerance", "--out", str(back)]
    ) == 0
    assert load_rep(back).bounded
    capsys.readouterr()
    assert main(["convert", "--rep", str(out), "--to", "renormalized"]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert "traps" in printed


def test_split_u_cli(tmp_path, capsys):
    fx = four_component_fixture()
    path = tmp_path / "g.json"
    dump_graph(fx.graph, path)
    assert main(["split-u", "--graph", str(path), "--set", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["graph"]["n"] == 2
    assert payload["derivatives"] == {"0": [0, 1]}


def test_cli_reports_usage_errors(tmp_path, capsys):
    missing = tmp_path / "missing.cnf"
    assert main(["nae-sat", "--cnf", str(missing)]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.cnf"
    bad.write_text("1 -2 3 0\n")
    assert main(["nae-sat", "--cnf", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_cli_reports_malformed_rep_files(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"lines": {"0": {"top": "1"}}}))
    good_graph = tmp_path / "g.json"
    dump_graph(Graph(1), good_graph)
    assert main(["verify-rep", "--rep", str(broken), "--graph", str(good_graph)]) == 2
    assert "error:" in capsys.readouterr().err
    not_json = tmp_path / "not.json"
    not_json.write_text("{{{")
    assert main(["verify-rep", "--rep", str(not_json), "--graph", str(good_graph)]) == 2


def test_nae_sat_json_output(cnf_file, capsys):
    assert main(["nae-sat", "--cnf", str(cnf_file), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"satisfiable": True, "assignment": [0, 0, 1, 1]}


def test_structure_cli_universal_vertex(tmp_path, capsys):
    star = tmp_path / "star.json"
    dump_graph(Graph(3, [(0, 1), (0, 2)]), star)
    assert main(["structure", "--graph", str(star), "--vertex", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["components"] == [] and payload["master"] is None
    assert "partition" not in payload


def test_cli_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
