"""Compare the numba and numpy Frobenius kernels against the pure-Python loop.

    python3 benchmarks/bench_kernels.py [--types 6a 8b] [-m 6 12 24] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np

from toricd import _kernels, atlas
from toricd.conic import ceil_lambda
from toricd.toric import canonicalize, class_group


def kernel_args(cone, m):
    g = class_group(cone)
    U, diag = g._U, g._diag
    free = [i for i in range(len(U)) if i >= len(diag) or diag[i] == 0]
    tors = [i for i, s in enumerate(diag) if s > 1]
    return cone.generators, [U[i] for i in free + tors], [0] * len(free) + [diag[i] for i in tors], m


def pure_python(cone, m):
    out = Counter()
    for k in product(range(m), repeat=cone.dim):
        out[canonicalize(cone, ceil_lambda(cone, [Fraction(x, m) for x in k]))] += 1
    return out


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--types", nargs="+", default=["4a", "6a", "8b"])
    ap.add_argument("-m", nargs="+", type=int, default=[6, 12, 24, 48])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max-m", type=int, default=12, help="skip the pure-Python loop above this m")
    args = ap.parse_args()

    # compile once so the timings exclude JIT cost
    _kernels.frobenius_codes_numba(*kernel_args(atlas.load("4a").cone, 2))

    print(f"{'type':>5} {'m':>4} {'points':>9} {'numba ms':>10} {'numpy ms':>10} {'python ms':>10}")
    for t in args.types:
        cone = atlas.load(t).cone
        for m in args.m:
            ka = kernel_args(cone, m)
            tn, a = best_of(lambda: _kernels.frobenius_codes_numba(*ka), args.repeat)
            tp, b = best_of(lambda: _kernels.frobenius_codes_numpy(*ka), args.repeat)
            assert np.array_equal(a, b)
            py = "-"
            if m <= args.python_max_m:
                ty, _ = best_of(lambda: pure_python(cone, m), 1)
                py = f"{ty * 1e3:10.2f}"
            print(f"{t:>5} {m:>4} {m ** cone.dim:>9} {tn * 1e3:10.2f} {tp * 1e3:10.2f} {py:>10}")


if __name__ == "__main__":
    main()
