"""Time the compiled and numpy game kernels on the same batches.

    python3 benchmarks/bench_kernels.py [--games N] [--repeat R]
"""
import argparse
import time

import numpy as np

from mokshapatam import fixtures, kernels
from mokshapatam.board import landing_table
from mokshapatam.simulate import trap_mask

BOARDS = {"0": fixtures.ZERO, "10(alpha)": fixtures.ALPHA, "7(Delta)": fixtures.DELTA}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"numpy": kernels.python_simulate_batch}
    if kernels.BACKEND == "cython":
        backends["cython"] = kernels.simulate_batch
    else:
        print("compiled kernel not built; timing the numpy fallback only")

    print(f"{'board':<12}{'backend':<10}{'seconds':>10}{'games/s':>14}")
    for name, board in BOARDS.items():
        land = np.asarray(landing_table(board), dtype=np.int64)
        mask = trap_mask(board)
        results = {}
        for label, fn in backends.items():
            secs, out = best_of(lambda: fn(land, mask, 1, 0, args.games, 10_000), args.repeat)
            results[label] = out
            print(f"{name:<12}{label:<10}{secs:>10.3f}{args.games / secs:>14,.0f}")
        if len(results) == 2:
            same = all(np.array_equal(a, b) for a, b in zip(results["numpy"], results["cython"]))
            print(f"{'':<12}outputs identical: {same}")


if __name__ == "__main__":
    main()
