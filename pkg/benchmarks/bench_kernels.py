"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 1000 10000] [--repeat 5]

Both implementations are fed the same tables and must agree exactly; the
script exits non-zero if they do not.
"""

import argparse
import random
import sys
import timeit

import numpy as np

from nerode import _fallback
from nerode import generators as gen

try:
    from nerode import _kernels
except ImportError:
    _kernels = None


def tables(n_states, n_inputs, seed):
    m = gen.random_machine(random.Random(seed), n_states, n_inputs, 3, redundancy=0.5)
    t = m.tables
    return (np.ascontiguousarray(t.trans, np.intc), np.ascontiguousarray(t.emit, np.intc))


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10000])
    ap.add_argument("--inputs", type=int, default=3)
    ap.add_argument("--word", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'kernel':<8}{'states':>8}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        trans, emit = tables(n, args.inputs, seed=n)
        a, b = _fallback.refine(trans, emit), _kernels.refine(trans, emit)
        if a[1] != b[1] or not np.array_equal(np.asarray(a[0]), np.asarray(b[0])):
            print(f"refine mismatch at {n} states", file=sys.stderr)
            return 2
        tp = best(lambda: _fallback.refine(trans, emit), args.repeat)
        tc = best(lambda: _kernels.refine(trans, emit), args.repeat)
        print(f"{'refine':<8}{n:>8}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")

        word = np.random.default_rng(n).integers(0, args.inputs, args.word).astype(np.intc)
        a, b = _fallback.run(trans, emit, 0, word), _kernels.run(trans, emit, 0, word)
        if a[1] != b[1] or list(a[0]) != list(b[0]):
            print(f"run mismatch at {n} states", file=sys.stderr)
            return 2
        tp = best(lambda: _fallback.run(trans, emit, 0, word), args.repeat)
        tc = best(lambda: _kernels.run(trans, emit, 0, word), args.repeat)
        print(f"{'run':<8}{n:>8}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
