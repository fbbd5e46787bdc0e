"""Compare the numba kernels with their numpy fallbacks.

Run with ``python3 benchmarks/bench_accel.py [--repeat N]``.  Each kernel is
called once before timing so that JIT compilation is excluded.
"""

import argparse
import timeit

import numpy as np

from hardy_lab import _accel


def cases(rng):
    n = 4096
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    col = rng.standard_normal(512) + 1j * rng.standard_normal(512)
    row = rng.standard_normal(512) + 1j * rng.standard_normal(512)
    row[0] = col[0]
    pts = 0.9 * np.exp(1j * rng.uniform(0, 2 * np.pi, 256)).astype(np.complex128)
    zeros = np.array([-(1 - 2.0 ** -k) for k in range(1, 9)], dtype=np.complex128)
    return {
        "toeplitz 512x512": ("toeplitz", (col, row)),
        "divide_linear 2^16": ("divide_linear", (values.repeat(16), 0.99 + 0j)),
        "direct_coeffs 4096 x 129": ("direct_coeffs", (values, theta, -64, 64)),
        "herglotz_quad 4096 x 256": ("herglotz_quad", (values.real + 0j, theta, pts)),
        "blaschke 8 zeros x 2^16": ("blaschke", (zeros, np.tile(pts, 256))),
        "binomial 2^16": ("binomial", (1.7, 2 ** 16)),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<28}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for label, (name, a) in cases(rng).items():
        fast = _accel.NUMBA_KERNELS[name]
        slow = _accel.NUMPY_KERNELS[name]
        np.testing.assert_allclose(fast(*a), slow(*a), rtol=1e-9, atol=1e-9)
        t_np = min(timeit.repeat(lambda: slow(*a), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: fast(*a), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<28}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
