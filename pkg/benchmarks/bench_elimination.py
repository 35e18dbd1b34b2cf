"""Benchmark the compiled vs pure-Python elimination kernel.

Runs the same fraction-free echelon on identical inputs through both
implementations and reports wall time.  Inputs cover the two workloads
that matter in practice: restriction matrices from actual double
complexes, and random sparse integer matrices of growing size.

Usage: python benchmarks/bench_elimination.py [--repeat N]
"""

import argparse
import random
import time

from confhodge import _elim_py, fixtures
from confhodge.arrangement import DiagonalGraph
from confhodge.complexes import build_double_complex

try:
    from confhodge import _elim
except ImportError:
    _elim = None


def engine_matrices():
    """Every nonempty restriction-matrix block of some real double
    complexes, as integer row dicts."""
    cases = [("p1", 4), ("elliptic", 3), ("p1xp1", 3), ("genus2", 3)]
    out = []
    for name, n in cases:
        dcx = build_double_complex(fixtures.build(name), DiagonalGraph.complete(n))
        for (i, t, p, q) in list(dcx.blocks):
            mat = dcx.delta_matrix(i, t, p, q)
            rows = mat.int_rows()
            if rows:
                out.append((rows, mat.ncols))
    return out


def random_matrices(count, size, density, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rows = []
        for _ in range(size):
            row = {
                c: rng.randint(-9, 9)
                for c in range(size)
                if rng.random() < density
            }
            rows.append({c: v for c, v in row.items() if v})
        out.append((rows, size))
    return out


def run(kernel, problems, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for rows, ncols in problems:
            kernel([dict(r) for r in rows], ncols)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    suites = [
        ("double-complex blocks", engine_matrices()),
        ("random sparse 30x30", random_matrices(40, 30, 0.3, seed=1)),
        ("random sparse 60x60", random_matrices(15, 60, 0.25, seed=2)),
        ("random dense 40x40", random_matrices(15, 40, 0.9, seed=3)),
    ]
    kernels = [("pure-python", _elim_py.echelon)]
    if _elim is not None:
        kernels.append(("compiled", _elim.echelon))
    else:
        print("note: compiled kernel not built; showing pure-python only\n")

    header = f"{'suite':<24}" + "".join(f"{name:>14}" for name, _ in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for suite_name, problems in suites:
        times = [run(k, problems, args.repeat) for _, k in kernels]
        line = f"{suite_name:<24}" + "".join(f"{t * 1000:>12.1f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:>9.2f}x"
        print(line)

    if len(kernels) == 2:
        for suite_name, problems in suites:
            for rows, ncols in problems:
                a = _elim.echelon([dict(r) for r in rows], ncols)
                b = _elim_py.echelon([dict(r) for r in rows], ncols)
                assert a == b, f"kernel outputs differ on a {suite_name} input"
        print("\nkernel outputs identical on all benchmark inputs")


if __name__ == "__main__":
    main()
