"""Command-line entry point.

Exit codes: 0 for success or a true verdict, 1 for a false verdict or
counterexample, 2 for usage and validation errors.  All reports are
deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .geometry import (
    ParallelogramRep,
    PermutationRep,
    ToleranceRep,
    TrapezoidRep,
    dump_rep,
    load_rep,
    parallelogram_to_tolerance,
    renormalize,
    rep_to_json,
    tolerance_to_parallelogram,
    verify_rep,
)
from .graphs import dump_graph, graph_to_json, load_graph, to_dot
from .orientation import PairSet, is_acyclic_wrt_pairs
from .oracles import (
    check_equivalence,
    is_comparability,
    is_permutation_graph,
    nae_sat_bruteforce,
)
from .reduction import build_line_gadget, build_merged_gadget, build_padded_gadget, parse_cnf
from .splitting import split_vertices
from .structure import (
    component_family,
    domination_closure,
    closure_complement,
    master_components,
    neighbor_partition,
    select_anchors,
)


def _emit(obj: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for key, value in obj.items():
            print(f"{key}: {value}")


def _read_cnf(path: str):
    return parse_cnf(Path(path).read_text())


def _cmd_reduce(args) -> int:
    cnf = _read_cnf(args.cnf)
    art = build_line_gadget(cnf, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stage = args.emit
    if stage == "pphi":
        graph, rep, labels = art.graph, art.rep, art.labels
        with open(out / "blocks.json", "w") as fh:
            json.dump(
                {str(p): list(ids) for p, ids in sorted(art.blocks.items())},
                fh,
                indent=2,
                sort_keys=True,
            )
        with open(out / "merge_pairs.json", "w") as fh:
            json.dump(art.merge_pairs.to_json(), fh, indent=2)
    else:
        merged = build_merged_gadget(art)
        if stage == "gphi":
            graph, rep, labels = merged
        else:
            padded = build_padded_gadget(merged.graph, merged.rep, merged.labels)
            graph, rep, labels = padded.graph, padded.rep, padded.labels
    dump_graph(graph, out / f"{stage}.graph.json", labels)
    dump_rep(rep, out / f"{stage}.rep.json")
    if args.dot:
        (out / f"{stage}.dot").write_text(to_dot(graph, labels))
    print(f"{stage}: {graph.n} vertices, {graph.edge_count} edges -> {out}")
    return 0


def _cmd_split_u(args) -> int:
    g, _ = load_graph(args.graph)
    u_set = [int(tok) for tok in args.set.split(",") if tok.strip() != ""]
    result = split_vertices(g, u_set)
    report = {
        "graph": graph_to_json(result.graph),
        "derivatives": {str(u): list(d) for u, d in sorted(result.derivatives.items())},
        "dropped": list(result.dropped),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def _cmd_check_acyclic(args) -> int:
    rep = load_rep(args.rep)
    if not isinstance(rep, PermutationRep):
        raise ValueError("check-acyclic expects a permutation representation")
    with open(args.pairs) as fh:
        pairs = PairSet.from_json(json.load(fh))
    verdict = is_acyclic_wrt_pairs(rep, pairs)
    _emit(
        {
            "acyclic": verdict.acyclic,
            "witness": list(verdict.witness) if verdict.witness else None,
        },
        True,
    )
    return 0 if verdict.acyclic else 1


def _cmd_verify_rep(args) -> int:
    rep = load_rep(args.rep)
    g, _ = load_graph(args.graph)
    ok, mismatch = verify_rep(rep, g)
    _emit({"ok": ok, "mismatch": list(mismatch) if mismatch else None}, True)
    return 0 if ok else 1


def _cmd_nae_sat(args) -> int:
    cnf = _read_cnf(args.cnf)
    assignment = nae_sat_bruteforce(cnf)
    if args.json:
        _emit(
            {
                "satisfiable": assignment is not None,
                "assignment": list(assignment) if assignment else None,
            },
            True,
        )
    elif assignment is None:
        print("UNSAT")
    else:
        print(" ".join(str(b) for b in assignment))
    return 0 if assignment is not None else 1


def _cmd_check_equivalence(args) -> int:
    cnf = _read_cnf(args.cnf)
    report = check_equivalence(cnf)
    _emit(report.to_json(), True)
    return 0 if report.consistent else 1


def _cmd_structure(args) -> int:
    g, _ = load_graph(args.graph)
    u = args.vertex
    fam = component_family(g, u)
    anchors = select_anchors(g, u)
    report: dict = {
        "vertex": u,
        "components": [list(c) for c in fam.components],
        "boundaries": [list(b) for b in fam.boundaries],
        "closures": [list(domination_closure(g, u, i)) for i in range(len(fam))],
        "closure_complements": [
            list(closure_complement(g, u, i)) for i in range(len(fam))
        ],
        "masters": list(master_components(g, u)) if len(fam) else [],
        "master": anchors.master,
        "opposite": anchors.opposite,
    }
    if anchors.opposite is not None:
        part = neighbor_partition(g, u)
        report["partition"] = {
            "neither": list(part.neither),
            "master_only": list(part.first),
            "opposite_only": list(part.second),
            "both": list(part.both),
        }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def _cmd_recognize(args) -> int:
    g, _ = load_graph(args.graph)
    if args.cls == "comparability":
        orientation = is_comparability(g)
        member = orientation is not None
        report = {
            "class": args.cls,
            "is_member": member,
            "orientation": sorted(list(a) for a in orientation.arcs)
            if orientation
            else None,
        }
    else:
        member = is_permutation_graph(g)
        report = {"class": args.cls, "is_member": member}
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if member else 1


def _cmd_convert(args) -> int:
    rep = load_rep(args.rep)
    if args.to == "parallelogram":
        if not isinstance(rep, ToleranceRep):
            raise ValueError("converting to parallelogram expects a tolerance rep")
        out = tolerance_to_parallelogram(rep)
    elif args.to == "tolerance":
        if not isinstance(rep, ParallelogramRep):
            raise ValueError("converting to tolerance expects a parallelogram rep")
        out = parallelogram_to_tolerance(rep)
    else:
        if not isinstance(rep, (PermutationRep, TrapezoidRep)):
            raise ValueError("renormalize expects a rail representation")
        out = renormalize(rep)
    if args.out:
        dump_rep(out, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(rep_to_json(out), indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tolgraphs",
        description="Intersection models, vertex splitting, and the "
        "NAE-3-SAT gadget pipeline with exhaustive oracles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="build gadget stages from a monotone 3-CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--emit", choices=("pphi", "gphi", "hphi"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("split-u", help="split a vertex set and keep the derivatives")
    p.add_argument("--graph", required=True)
    p.add_argument("--set", required=True, help="comma-separated vertex ids")
    p.set_defaults(func=_cmd_split_u)

    p = sub.add_parser("check-acyclic", help="acyclicity of a paired permutation rep")
    p.add_argument("--rep", required=True)
    p.add_argument("--pairs", required=True)
    p.set_defaults(func=_cmd_check_acyclic)

    p = sub.add_parser("verify-rep", help="does a representation induce a graph?")
    p.add_argument("--rep", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_verify_rep)

    p = sub.add_parser("nae-sat", help="brute-force NAE satisfiability")
    p.add_argument("--cnf", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_nae_sat)

    p = sub.add_parser(
        "check-equivalence", help="formula-versus-geometry equivalence report"
    )
    p.add_argument("--cnf", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check_equivalence)

    p = sub.add_parser("structure", help="domination structure around a vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("recognize", help="exhaustive class membership oracles")
    p.add_argument("--graph", required=True)
    p.add_argument(
        "--class",
        dest="cls",
        choices=("permutation", "comparability"),
        required=True,
    )
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("convert", help="conversions between representations")
    p.add_argument("--rep", required=True)
    p.add_argument(
        "--to",
        choices=("parallelogram", "tolerance", "renormalized"),
        required=True,
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, TypeError) as exc:
        print(f"error: malformed input ({exc!r})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
