#!/usr/bin/env python3
"""Time the jitted kernels against their numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [n_vertices]

Builds a planted-partition graph, then times each kernel pair on the same
inputs.  The active path inside the package is chosen at import time via
SEEDCOMM_NO_NUMBA; this script ignores that switch and calls both
implementations directly.
"""

import sys
import time

import numpy as np

import seedcomm as sc
import seedcomm._kernels as K


def timeit(fn, *args, repeat=20):
    fn(*args)  # warmup (jit compile / cache touch)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    n_target = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    size = 50
    k = max(2, n_target // size)
    g, _ = sc.generate_planted(sc.PlantedSpec(k, size, 0.3, 0.0005, rng_seed=0))
    print(f"graph: n={g.n} m={g.m}")
    if not K.HAS_NUMBA:
        print("numba unavailable: nothing to compare")
        return 1

    rng = np.random.default_rng(0)
    sup = np.sort(rng.choice(g.n, size=g.n // 10, replace=False)).astype(np.int64)
    val = rng.random(sup.size)
    src = 1.0 / (g.degrees + 1.0)
    dst = np.ones(g.n)
    ssym = 1.0 / np.sqrt(g.degrees + 1.0)
    x = rng.random(g.n)
    ranked = rng.permutation(g.n).astype(np.int64)[: g.n - 1]
    pos = np.full(g.n, g.n, dtype=np.int64)
    pos[ranked] = np.arange(ranked.size, dtype=np.int64)
    members = sup
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True

    cases = [
        ("propagate_support",
         (g.indptr, g.indices, src, dst, sup, val, g.n),
         K.propagate_support_numpy, K.propagate_support_numba),
        ("propagate_dense",
         (g.indptr, g.indices, ssym, ssym, x),
         K.propagate_dense_numpy, K.propagate_dense_numba),
        ("prefix_conductance",
         (g.indptr, g.indices, g.degrees, pos, ranked, 2 * g.m),
         K.prefix_conductance_numpy, K.prefix_conductance_numba),
        ("cut_and_volume",
         (g.indptr, g.indices, g.degrees, members, mask),
         K.cut_and_volume_numpy, K.cut_and_volume_numba),
    ]

    print(f"{'kernel':<22}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for name, args, f_np, f_nb in cases:
        t_np = timeit(f_np, *args)
        t_nb = timeit(f_nb, *args)
        print(f"{name:<22}{t_np * 1e3:>10.3f}ms{t_nb * 1e3:>10.3f}ms{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
