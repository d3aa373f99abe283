"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time per kernel for each backend and the speedup.
"""

import argparse
import timeit

import numpy as np

from datatensor import _pykernels as py

try:
    from datatensor import _ckernels as cy
except ImportError:
    cy = None


def cases(rng):
    a = rng.integers(-1000, 1000, 100_000)
    b = rng.integers(-1000, 1000, 100_000)
    m = rng.integers(-1000, 1000, (1000, 128))
    x = rng.standard_normal(128)
    y = rng.standard_normal(128)
    fa = rng.random(100_000) * 4
    fb = rng.standard_normal(100_000)
    return [
        ("int_binary add, 100k", lambda k: k.int_binary(py.ADD, a, b)),
        ("int_binary mul, 100k", lambda k: k.int_binary(py.MUL, a, b)),
        ("int_reduce sum, 1000x128", lambda k: k.int_reduce(py.R_SUM, m)),
        ("cosine, 128-dim x 1000", lambda k: [k.similarity(py.S_COSINE, x, y) for _ in range(1000)]),
        ("euclidean, 128-dim x 1000", lambda k: [k.similarity(py.S_EUCLIDEAN, x, y) for _ in range(1000)]),
        ("float_pow, 100k", lambda k: k.float_pow(fa, fb)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", py)] + ([("cython", cy)] if cy is not None else [])
    print(f"{'kernel':28} " + " ".join(f"{name:>10}" for name, _ in backends) + ("    speedup" if cy else ""))
    for label, fn in cases(rng):
        times = [min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) for _, mod in backends]
        row = f"{label:28} " + " ".join(f"{t * 1e3:8.2f}ms" for t in times)
        if cy is not None:
            row += f"  {times[0] / times[1]:8.1f}x"
        print(row)
    if cy is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
