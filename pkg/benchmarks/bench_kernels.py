#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each kernel on sizable random inputs, then times the end-to-end
equivalence check in a subprocess per backend.  Usage:

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from tolgraphs._core import _kernels_py as pure

try:
    from tolgraphs._core import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_kernels(quick: bool):
    rng = random.Random("bench")
    n_lines = 600 if quick else 2000
    tops = rng.sample(range(10 * n_lines), n_lines)
    bottoms = rng.sample(range(10 * n_lines), n_lines)

    n_traps = 400 if quick else 1200
    tv = rng.sample(range(10 * n_traps), 2 * n_traps)
    bv = rng.sample(range(10 * n_traps), 2 * n_traps)
    a = [min(tv[2 * i], tv[2 * i + 1]) for i in range(n_traps)]
    b = [max(tv[2 * i], tv[2 * i + 1]) for i in range(n_traps)]
    c = [min(bv[2 * i], bv[2 * i + 1]) for i in range(n_traps)]
    d = [max(bv[2 * i], bv[2 * i + 1]) for i in range(n_traps)]

    n_nodes = 300 if quick else 800
    arcs = 20 * n_nodes
    us = [rng.randrange(n_nodes) for _ in range(arcs)]
    vs = [rng.randrange(n_nodes) for _ in range(arcs)]
    ws = [rng.randint(-100, -1) for _ in range(arcs)]  # feasible system

    nae_n = 18 if quick else 22
    clauses = [tuple(sorted(rng.sample(range(nae_n), 3))) for _ in range(40)]
    # force a late or absent solution so the enumeration runs long
    clauses += [(0, 1, 2)] * 2

    cases = [
        (f"crossing_arcs (n={n_lines})", "crossing_arcs", (tops, bottoms)),
        (f"trapezoid_edges (n={n_traps})", "trapezoid_edges", (a, b, c, d)),
        (
            f"spfa_longest (n={n_nodes}, m={arcs})",
            "spfa_longest",
            (n_nodes, us, vs, ws),
        ),
        (f"nae_smallest (n={nae_n}, k={len(clauses)})", "nae_smallest", (nae_n, clauses)),
    ]
    print(f"{'kernel':40} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for label, name, args in cases:
        t_pure, r_pure = timeit(getattr(pure, name), *args)
        if compiled is None:
            print(f"{label:40} {t_pure:9.4f}s {'n/a':>10} {'n/a':>9}")
            continue
        t_comp, r_comp = timeit(getattr(compiled, name), *args)
        assert r_pure == r_comp, f"backend mismatch in {name}"
        print(
            f"{label:40} {t_pure:9.4f}s {t_comp:9.4f}s {t_pure / t_comp:8.1f}x"
        )


END_TO_END = (
    "import time; from tolgraphs.reduction import MonotoneCnf; "
    "from tolgraphs.oracles import check_equivalence; "
    "cnf = MonotoneCnf(6, ((1,2,3),(2,3,4),(3,4,5),(4,5,6),(1,5,6),(2,4,6),(1,3,5),(1,2,6))); "
    "t0 = time.perf_counter(); r = check_equivalence(cnf); "
    "print(f'{time.perf_counter()-t0:.2f}s consistent={r.consistent}')"
)


def bench_end_to_end():
    print("\nend-to-end check_equivalence (n=6, k=8 formula):")
    for label, env in (("compiled", {}), ("pure", {"TOLGRAPHS_PURE": "1"})):
        proc = subprocess.run(
            [sys.executable, "-c", END_TO_END],
            capture_output=True,
            text=True,
            env={**os.environ, **env},
        )
        print(f"  {label:10} {proc.stdout.strip() or proc.stderr.strip()}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    parser.add_argument(
        "--no-e2e", action="store_true", help="skip the subprocess timings"
    )
    args = parser.parse_args()
    if compiled is None:
        print("compiled kernels unavailable; showing pure timings only")
    bench_kernels(args.quick)
    if not args.no_e2e:
        bench_end_to_end()


if __name__ == "__main__":
    main()
