"""Time the numba and numpy backends of the integer kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from qpt import _kernels as K
from qpt.graphs import rook_graph


def _cases(rng):
    g = rook_graph(6)
    adj = g.adjacency.astype(np.uint8)
    yield "refine_colors (rook 6x6)", K.refine_colors_numpy, K.refine_colors_numba, (adj, np.zeros(g.n, np.int64))
    gf = rng.integers(0, 2, size=(120, 160), dtype=np.uint8)
    yield "gf2_rref 120x160", K.gf2_rref_numpy, K.gf2_rref_numba, (gf,)
    m = rng.integers(0, 64, size=(60, 40))
    b = rng.integers(0, 64, size=60)
    yield "smith Z/2^6 60x40", K.smith_prime_power_numpy, K.smith_prime_power_numba, (m, b, 2, 6)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if not K.HAVE_NUMBA:
        print("numba not importable; only the numpy backend is available")
    print(f"{'kernel':28s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, f_np, f_nb, argv in _cases(rng):
        t_np = min(timeit.repeat(lambda: f_np(*argv), number=1, repeat=args.repeat)) * 1e3
        if K.HAVE_NUMBA:
            f_nb(*argv)  # compile
            t_nb = min(timeit.repeat(lambda: f_nb(*argv), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:28s} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:28s} {t_np:10.3f} {'-':>10s}")


if __name__ == "__main__":
    main()
