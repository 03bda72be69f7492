"""Benchmark the numba and pure-numpy implementations of the hot kernels.

Times phase-moment accumulation, the plain and periodic Gaussian
transforms, and Fourier-series resummation at several problem sizes,
reporting the best wall time per call for each backend. A warmup call
per function is excluded so numba compilation does not pollute the
numbers. When the numba backend is unavailable (or disabled through
FOURIERGIT_BACKEND=numpy) only the numpy column is reported.

Run from the repository root::

    python benchmarks/bench_backends.py --sizes 64 512 4096 --repeats 7
"""

import argparse
import time

import numpy as np

from fouriergit import _backend
from fouriergit._backend import (
    active_backend,
    gaussian_transform_numpy,
    periodic_transform_numpy,
    phase_moment_sums_numpy,
    reconstruct_numpy,
)


def _problem(n_lines, n_grid, seed=7):
    rng = np.random.default_rng(seed)
    omegas = np.sort(rng.uniform(-0.9, 0.9, n_lines))
    weights = rng.uniform(0.1, 1.0, n_lines)
    weights /= weights.sum()
    nus = np.linspace(-1.0, 1.0, n_grid)
    period = 2.2
    dt = 2.0 * np.pi / period
    lam = 0.01
    n_max = 200
    moments = phase_moment_sums_numpy(omegas, weights, dt, n_max)
    return {
        "phase_moments": (omegas, weights, dt, n_max),
        "gaussian_transform": (nus, omegas, weights, lam),
        "periodic_transform": (nus, omegas, weights, lam, period, 3),
        "reconstruct_series": (nus, moments, dt, lam, period, n_max),
    }


def _best_time(fn, args, repeats):
    fn(*args)  # warmup (includes any jit compilation)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[64, 512, 4096],
        help="numbers of spectral lines to benchmark",
    )
    parser.add_argument(
        "--grid-points", type=int, default=512,
        help="evaluation grid size for the transforms",
    )
    parser.add_argument(
        "--repeats", type=int, default=7,
        help="timed calls per case (best is reported)",
    )
    args = parser.parse_args(argv)

    numba_active = active_backend() == "numba"
    numpy_fns = {
        "phase_moments": phase_moment_sums_numpy,
        "gaussian_transform": gaussian_transform_numpy,
        "periodic_transform": periodic_transform_numpy,
        "reconstruct_series": reconstruct_numpy,
    }
    dispatched = {
        "phase_moments": _backend.phase_moment_sums,
        "gaussian_transform": _backend.gaussian_transform,
        "periodic_transform": _backend.periodic_transform,
        "reconstruct_series": _backend.reconstruct_series,
    }

    print(f"active backend: {active_backend()}")
    if numba_active:
        header = f"{'kernel':<20} {'lines':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}"
    else:
        header = f"{'kernel':<20} {'lines':>6} {'numpy ms':>10}"
    print(header)
    print("-" * len(header))

    for n_lines in args.sizes:
        cases = _problem(n_lines, args.grid_points)
        for name, call_args in cases.items():
            t_np = _best_time(numpy_fns[name], call_args, args.repeats)
            if numba_active:
                t_nb = _best_time(dispatched[name], call_args, args.repeats)
                print(
                    f"{name:<20} {n_lines:>6} {t_np * 1e3:>10.3f} "
                    f"{t_nb * 1e3:>10.3f} {t_np / t_nb:>8.2f}x"
                )
            else:
                print(f"{name:<20} {n_lines:>6} {t_np * 1e3:>10.3f}")


if __name__ == "__main__":
    main()
