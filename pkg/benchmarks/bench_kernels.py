"""Compare the numba and numpy backends of the QSP chain kernel.

Times the bare kernel on the half node grid and a full fixed-point solve of
the even Jacobi-Anger target at several values of tau. Run with

    python3 benchmarks/bench_kernels.py [--taus 50 200 800] [--repeats 5]
"""

import argparse
import time

import numpy as np

from symqsp import _kernels
from symqsp.chebyshev import jacobi_anger
from symqsp.solver import fpi_solve


def best_of(fn, repeats):
    fn()  # warm-up: numba compilation and caches
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_case(d, rng):
    theta = 2.0 * np.pi * np.arange(d + 1) / (2 * d + 1)
    return rng.uniform(-1, 1, d + 1), np.cos(theta), np.sin(theta)


def solve_time(c, use_numba, repeats):
    saved = _kernels.USE_NUMBA
    _kernels.USE_NUMBA = use_numba
    try:
        return best_of(lambda: fpi_solve(c), repeats)
    finally:
        _kernels.USE_NUMBA = saved


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--taus", type=float, nargs="+", default=[50, 100, 200, 400, 800, 1600])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    header = f"{'tau':>6} {'d':>5} {'kernel numba':>13} {'kernel numpy':>13} {'x':>6} {'solve numba':>12} {'solve numpy':>12} {'x':>6} {'max |diff|':>10}"
    print(header)
    print("-" * len(header))
    for tau in args.taus:
        c_even, _, d = jacobi_anger(tau, 1e-14, 0.5)
        psi, x, s = kernel_case(d, rng)
        k_fast = best_of(lambda: _kernels.g_chain_numba(psi, x, s), args.repeats)
        k_ref = best_of(lambda: _kernels.g_chain_numpy(psi, x, s), args.repeats)
        diff = np.max(np.abs(_kernels.g_chain_numba(psi, x, s) - _kernels.g_chain_numpy(psi, x, s)))
        s_fast = solve_time(c_even, True, args.repeats)
        s_ref = solve_time(c_even, False, max(1, args.repeats // 2))
        print(
            f"{tau:>6g} {d:>5d} {k_fast * 1e3:>10.3f} ms {k_ref * 1e3:>10.3f} ms {k_ref / k_fast:>5.1f}x"
            f" {s_fast * 1e3:>9.2f} ms {s_ref * 1e3:>9.2f} ms {s_ref / s_fast:>5.1f}x {diff:>10.1e}"
        )


if __name__ == "__main__":
    main()
