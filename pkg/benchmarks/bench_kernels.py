"""Compare the numba and numpy backends of the mod-p kernels.

The last column times the pure-Python generic routines on the same input;
those are what the library runs for extension fields and the rationals.

    python3 benchmarks/bench_kernels.py --sizes 4 8 16 32 --reps 20
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lieeig import _kernels
from lieeig.fields import GF
from lieeig.linalg import _berkowitz_generic, _rref_generic, Matrix


def best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def generic_matmul(A: Matrix, B: Matrix):
    cols = B.columns()
    zero = A.field.zero
    out = []
    for r in A.rows:
        row = []
        for c in cols:
            acc = zero
            for x, y in zip(r, c):
                acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--prime", type=int, default=65521)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    p = args.prime
    rng = np.random.default_rng(args.seed)
    backends = _kernels.available_backends()
    print(f"p = {p}, backends: {backends}, best of {args.reps}")

    # compile once outside the timed region
    warm = rng.integers(0, p, (3, 3), dtype=np.int64)
    for b in backends:
        _kernels.rref_modp(warm, p, backend=b)
        _kernels.matmul_modp(warm, warm, p, backend=b)
        _kernels.charpoly_modp(warm, p, backend=b)

    header = f"{'op':<10}{'n':>5}" + "".join(f"{b:>14}" for b in backends) + f"{'generic':>14}"
    print(header)
    F = GF(p)
    for n in args.sizes:
        a = rng.integers(0, p, (n, n), dtype=np.int64)
        b = rng.integers(0, p, (n, n), dtype=np.int64)
        M = Matrix(F, [[F(int(x)) for x in row] for row in a])
        N = Matrix(F, [[F(int(x)) for x in row] for row in b])
        ops = {
            "rref": (lambda be: _kernels.rref_modp(a, p, backend=be), lambda: _rref_generic(F, M.rows)),
            "matmul": (lambda be: _kernels.matmul_modp(a, b, p, backend=be), lambda: generic_matmul(M, N)),
            "charpoly": (lambda be: _kernels.charpoly_modp(a, p, backend=be), lambda: _berkowitz_generic(M)),
        }
        for name, (kern, generic) in ops.items():
            times = [best_of(lambda be=be: kern(be), args.reps) for be in backends]
            t_generic = best_of(generic, max(1, args.reps // 5))
            print(f"{name:<10}{n:>5}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times) + f"{t_generic * 1e3:>12.3f}ms")


if __name__ == "__main__":
    main()
