"""Compiled vs pure-Python rank kernel on the matrices a real Betti computation builds.

    python benchmarks/bench_rank.py [--repeat 3]

Blocks are captured from Koszul computations on a few lattices, presorted as the
dispatcher does, and each kernel is timed on the whole batch.
"""
import argparse
import time

from latmeet import kernels
from latmeet.betti import betti_table
from latmeet.fixtures import load
from latmeet.joinmeet import join_meet_ideal
from latmeet.lattice import boolean, diamond

CASES = {
    "D7": lambda: diamond(5),
    "B3": lambda: boolean(3),
    "reg3_a": lambda: load("reg3_a"),
    "reg5_b": lambda: load("reg5_b"),
}


def capture(L):
    blocks = []
    real = kernels.sparse_rank

    def spy(rows, ncols):
        blocks.append((kernels.presort(rows, ncols), ncols))
        return real(rows, ncols)

    kernels.sparse_rank = spy
    try:
        betti_table(join_meet_ideal(L).ideal)
    finally:
        kernels.sparse_rank = real
    return [b for b in blocks if b[0]]


def timed(fn, blocks, repeat):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        ranks = []
        for rows, ncols in blocks:
            try:
                ranks.append(fn(rows, ncols))
            except OverflowError:
                ranks.append(kernels.py_sparse_rank(rows, ncols))
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, ranks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.ext_sparse_rank is None:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'case':8} {'blocks':>6} {'entries':>8} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for name, make in CASES.items():
        blocks = capture(make())
        entries = sum(len(r) for rows, _ in blocks for r in rows)
        tp, rp = timed(kernels.py_sparse_rank, blocks, args.repeat)
        if kernels.ext_sparse_rank is None:
            print(f"{name:8} {len(blocks):>6} {entries:>8} {tp:>9.4f} {'-':>9} {'-':>8}")
            continue
        te, re_ = timed(kernels.ext_sparse_rank, blocks, args.repeat)
        assert rp == re_, f"{name}: kernels disagree"
        print(f"{name:8} {len(blocks):>6} {entries:>8} {tp:>9.4f} {te:>9.4f} {tp / te:>7.1f}x")


if __name__ == "__main__":
    main()
