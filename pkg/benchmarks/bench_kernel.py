"""Benchmark the exact linear-algebra kernel: compiled core vs pure Python.

    python benchmarks/bench_kernel.py
    python benchmarks/bench_kernel.py --sizes 20 40 80 --reps 5

Times rref / rank / mat_mul over GF(p) and over Q on seeded random
matrices, for every importable backend, and prints the speedup of the
compiled core.  Also times one end-to-end K0 computation per backend via
the kernel indirection.
"""

import argparse
import random
import time
from fractions import Fraction

from gradedk._kernel import backends


def rand_modp(rng, n, p):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def rand_rational(rng, n):
    return [
        [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(n)]
        for _ in range(n)
    ]


def time_op(fn, reps):
    best = None
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench(sizes, reps):
    impls = backends()
    print(f"backends: {', '.join(impls)}")
    rows = []
    for n in sizes:
        rng = random.Random(n)
        mp = rand_modp(rng, n, 10007)
        mq = rand_rational(rng, max(4, n // 2))
        cases = [
            (f"rref GF(p) {n}x{n}", lambda b, m=mp: b.rref(m, 10007)),
            (f"rank GF(p) {n}x{n}", lambda b, m=mp: b.rank(m, 10007)),
            (f"mat_mul GF(p) {n}x{n}", lambda b, m=mp: b.mat_mul(m, m, 10007)),
            (
                f"rref Q {max(4, n // 2)}x{max(4, n // 2)}",
                lambda b, m=mq: b.rref(m, 0),
            ),
            (
                f"rank Q {max(4, n // 2)}x{max(4, n // 2)}",
                lambda b, m=mq: b.rank(m, 0),
            ),
        ]
        for label, op in cases:
            timings = {name: time_op(lambda b=impl: op(b), reps) for name, impl in impls.items()}
            rows.append((label, timings))
    width = max(len(r[0]) for r in rows)
    names = list(impls)
    header = f"{'case'.ljust(width)}  " + "  ".join(f"{n:>10}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for label, timings in rows:
        line = label.ljust(width) + "  " + "  ".join(
            f"{timings[n] * 1e3:9.2f}ms" for n in names
        )
        if len(names) == 2:
            a, b = (timings[n] for n in names)
            fast, slow = min(a, b), max(a, b)
            line += f"  {slow / fast:7.1f}x"
        print(line)


def bench_end_to_end(reps):
    """One K0 computation per backend, forcing the kernel choice."""
    import os
    import subprocess
    import sys

    script = (
        "import time; t0=time.perf_counter();"
        "import gradedk, gradedk.ktheory as kt, gradedk.algebra as alg;"
        "from gradedk.fields import QQ;"
        "A = alg.matrix_algebra(QQ, [0,1,2,2,3]);"
        "kt.k0(A.zero_part()); kt.k0(A);"
        "print(gradedk.KERNEL_BACKEND, time.perf_counter()-t0)"
    )
    print("\nend-to-end k0 of the 5x5 example (includes imports):")
    for backend in backends():
        env = dict(os.environ, GRADEDK_KERNEL=backend)
        out = subprocess.run(
            [sys.executable, "-c", script], env=env, capture_output=True, text=True
        )
        print(f"  {out.stdout.strip()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80])
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--no-e2e", action="store_true")
    args = ap.parse_args()
    bench(args.sizes, args.reps)
    if not args.no_e2e:
        bench_end_to_end(args.reps)


if __name__ == "__main__":
    main()
