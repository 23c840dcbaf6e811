"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from gsp_pullback import _kernels
from gsp_pullback._kernels import python_kernels

CASES = [
    ("q_table n=2 bounds 40", "q_table", (2, (40, 40))),
    ("q_table n=3 bounds 16", "q_table", (3, (16, 16, 16))),
    ("q_table n=4 bounds 10", "q_table", (4, (10, 10, 10, 10))),
    ("|Sp_2(F_7)| brute force", "count_symplectic_mod_p", (1, 7)),
    ("|Sp_4(F_2)| brute force", "count_symplectic_mod_p", (2, 2)),
]


def best_of(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.BACKEND != "cython":
        print("compiled extension not available; only the fallback would be timed")
        return
    print(f"{'case':28s} {'cython [ms]':>12s} {'numpy [ms]':>12s} {'speedup':>8s}")
    for label, name, fargs in CASES:
        fast, slow = getattr(_kernels, name), getattr(python_kernels, name)
        assert np.array_equal(np.asarray(fast(*fargs)), np.asarray(slow(*fargs)))
        tc = best_of(fast, fargs, args.repeat)
        tp = best_of(slow, fargs, args.repeat)
        print(f"{label:28s} {tc * 1e3:12.3f} {tp * 1e3:12.3f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
