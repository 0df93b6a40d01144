"""Compiled vs pure-Python kernels: row reduction and products mod p.

    python3 benchmarks/bench_linalg.py [--sizes 32 64 128] [--repeat 5] [--prime 5]

Also times one end-to-end Ext computation under each backend (the backend is
picked at import, so that part runs in subprocesses).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from twistedreps import _kernels_py

try:
    from twistedreps import _kernels
except ImportError:
    _kernels = None

END_TO_END = """
import time
from twistedreps import linalg
from twistedreps.instances import build_framed, framed_les, residue_triple
from twistedreps import GF
from twistedreps.algebra import truncated_polynomial, free_module
A = truncated_polynomial(GF(5), 4)
fd = build_framed(A, free_module(A, 2))
X = residue_triple(fd)
t0 = time.perf_counter()
framed_les(fd, X, X, 6)
print(linalg.BACKEND, time.perf_counter() - t0)
"""


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_kernels(sizes, repeat, p):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<8}{'n':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in sizes:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        b = rng.integers(0, p, size=(n, n), dtype=np.int64)
        for name, call in (
            ("rref", lambda mod: mod.rref_modp(a.copy(), p, -1)),
            ("matmul", lambda mod: mod.matmul_modp(a, b, p)),
        ):
            tp = best(lambda: call(_kernels_py), repeat)
            if _kernels is None:
                print(f"{name:<8}{n:>6}{tp:>12.5f}{'n/a':>12}{'':>10}")
                continue
            tc = best(lambda: call(_kernels), repeat)
            print(f"{name:<8}{n:>6}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")


def bench_end_to_end():
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("TWISTEDREPS_PURE", None)
        if pure:
            env["TWISTEDREPS_PURE"] = "1"
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"framed Ext to degree 6 over k[t]/t^4, backend {backend}: {float(secs):.3f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 128, 256])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--prime", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; showing the pure-Python kernels only")
    bench_kernels(args.sizes, args.repeat, args.prime)
    if not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
