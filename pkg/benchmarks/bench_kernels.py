"""Compare the jit and pure-numpy kernel backends on the solver hot path.

Times support_sums on random r-uniform instances of growing size and a
full fixed-point solve on the largest one.  Run directly:

    python3 benchmarks/bench_kernels.py
"""

import time
from itertools import combinations

import numpy as np

from uhs import _kernels
from uhs.core import UniformHypergraph
from uhs.solver import solve_p_spectral


def random_instance(rng, r, n, m):
    pool = list(combinations(range(n), r))
    idx = rng.choice(len(pool), size=min(m, len(pool)), replace=False)
    return UniformHypergraph.from_edges(r, n, [pool[int(k)] for k in idx])


def time_fn(fn, *args, repeat=200):
    fn(*args)  # warm up (jit compilation on first call)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    rng = np.random.default_rng(0)
    if not _kernels._HAVE_NUMBA:
        print("numba unavailable; nothing to compare")
        return
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'r':>3} {'n':>6} {'m':>7} {'jit us':>10} {'numpy us':>10} {'speedup':>8}")
    for r, n, m in [(3, 30, 60), (3, 100, 400), (4, 200, 2000), (3, 500, 10000)]:
        G = random_instance(rng, r, n, m)
        x = rng.uniform(0.1, 1.0, G.n)
        t_jit = time_fn(_kernels.support_sums_numba, x, G.edges_array, G.n)
        t_np = time_fn(_kernels.support_sums_numpy, x, G.edges_array, G.n)
        print(
            f"{r:>3} {n:>6} {G.m:>7} {t_jit * 1e6:>10.1f} {t_np * 1e6:>10.1f} "
            f"{t_np / t_jit:>7.1f}x"
        )

    G = random_instance(rng, 3, 500, 10000)
    for backend, fns in (
        ("numba", (_kernels.support_sums_numba, _kernels.polynomial_sum_numba)),
        ("numpy", (_kernels.support_sums_numpy, _kernels.polynomial_sum_numpy)),
    ):
        saved = _kernels.support_sums, _kernels.polynomial_sum
        import uhs.solver as solver_mod

        solver_mod.support_sums, solver_mod.polynomial_sum = fns
        try:
            solve_p_spectral(G, 4.5)  # warm up dispatch and caches
            t0 = time.perf_counter()
            res = solve_p_spectral(G, 4.5)
            dt = time.perf_counter() - t0
        finally:
            solver_mod.support_sums, solver_mod.polynomial_sum = saved
        print(
            f"full solve (r=3, n=500, m={G.m}, p=4.5) [{backend}]: "
            f"{dt:.3f}s, {res.iterations} iterations, lambda={res.lam:.6f}"
        )


if __name__ == "__main__":
    main()
