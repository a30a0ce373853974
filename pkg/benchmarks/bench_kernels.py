"""Benchmark the compiled Jacobi kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times one eigendecomposition call per backend across the dimension range the
package actually uses (phase-space matrices up to the 20x20 cap), plus
numpy.linalg.eigh as an external reference point.  The two in-house backends
produce bit-identical results; this script is about the speed gap that makes
the compiled kernel the default.
"""

import argparse
import time

import numpy as np

from symblob.kernels import get_backends, jacobi_eigh


def _time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats (best-of)")
    args = parser.parse_args()

    backends = get_backends()
    dims = [2, 4, 6, 8, 10, 12, 16, 20]
    rng = np.random.default_rng(0)

    header = f"{'dim':>4} | {'python (ms)':>12} | {'cython (ms)':>12} | {'speedup':>8} | {'numpy (ms)':>11}"
    print(header)
    print("-" * len(header))
    for dim in dims:
        g = rng.standard_normal((dim, dim))
        a = g + g.T
        row = {}
        for name, impl in backends.items():
            row[name] = _time_call(lambda: jacobi_eigh(a, impl=impl), args.repeats)
        row["numpy"] = _time_call(lambda: np.linalg.eigh(a), args.repeats)
        speedup = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(
            f"{dim:>4} | {row['python'] * 1e3:>12.3f} | "
            f"{row.get('cython', float('nan')) * 1e3:>12.3f} | {speedup:>7.1f}x | "
            f"{row['numpy'] * 1e3:>11.3f}"
        )

    # end-to-end flavor: a full symplectic diagonalization at the largest size
    from symblob.matcore import random_spd
    from symblob.williamson import williamson_diagonalize

    m = random_spd(10, 1)
    t = _time_call(lambda: williamson_diagonalize(m), args.repeats)
    print(f"\nwilliamson_diagonalize on 10x10 via active backend: {t * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
