"""Compare the numba-compiled and pure-numpy simplex kernels.

Times full nominal sweeps (one envelopment LP per unit) on synthetic
datasets of growing size with each backend swapped in.

Usage: python benchmarks/bench_simplex.py [--units 20 60 120] [--repeats 3]
"""

import argparse
import time

import numpy as np

import udea.lp
from udea._kernels import (HAVE_NUMBA, simplex_core_numba,
                           simplex_core_numpy)
from udea.dataset import DeaDataset, solve_all


def make_dataset(rng, units, n_inputs=2, n_outputs=2):
    return DeaDataset(
        names=[f"u{k}" for k in range(units)],
        X=rng.uniform(0.5, 10.0, size=(n_inputs, units)),
        Y=rng.uniform(0.5, 10.0, size=(n_outputs, units)),
    )


def time_backend(core, ds, repeats):
    udea.lp.simplex_core = core
    solve_all(ds)  # warm-up (jit compilation, caches)
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        solve_all(ds)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--units", type=int, nargs="+",
                        default=[20, 60, 120])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    print(f"{'units':>6}  {'numpy [ms]':>11}  {'numba [ms]':>11}  "
          f"{'speed-up':>8}")
    for units in args.units:
        ds = make_dataset(rng, units)
        t_np = time_backend(simplex_core_numpy, ds, args.repeats)
        t_nb = time_backend(simplex_core_numba, ds, args.repeats)
        print(f"{units:>6}  {t_np * 1e3:>11.2f}  {t_nb * 1e3:>11.2f}  "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
