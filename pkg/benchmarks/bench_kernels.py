"""Compare the compiled and pure-Python summation kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Prints the best
wall time per call for each backend, the speed-up and the largest absolute
difference between the two results.
"""

import argparse
import timeit

import numpy as np

from gale import kernels, rng
from gale.spectra import TWO_PI


def field_case(n_freq=256, m_angle=37, n_points=1000, seed=0):
    r = np.random.default_rng(seed)
    amp = r.random((n_freq, m_angle))
    omega = np.linspace(0.06, TWO_PI * 8, n_freq)
    theta = -np.pi / 2 + (np.arange(m_angle) + 0.5) * np.pi / m_angle
    phase = rng.phases(seed, 0, n_freq, m_angle)
    xw = r.uniform(0, 100, n_points)
    yw = r.uniform(0, 100, n_points)
    return (amp, omega / 6.0, np.cos(theta), np.sin(theta), omega, phase, xw, yw, 1.5)


def series_case(n_freq=1024, n_t=5000, seed=0):
    r = np.random.default_rng(seed)
    omega = np.linspace(0.06, TWO_PI * 8, n_freq)
    return (r.random(n_freq), omega, rng.phases(seed, 32, n_freq), np.arange(n_t) / 50.0)


def bench(name, fn, args, repeat):
    rows = []
    results = {}
    backends = ["python"] + (["cython"] if kernels.HAVE_CYTHON else [])
    for b in backends:
        results[b] = fn(*args, backend=b)
        best = min(timeit.repeat(lambda: fn(*args, backend=b), number=1, repeat=repeat))
        rows.append((b, best))
    print(f"{name}")
    base = rows[0][1]
    for b, best in rows:
        print(f"  {b:<7} {best * 1e3:10.3f} ms   x{base / best:6.2f}")
    if len(results) == 2:
        diff = np.max(np.abs(results["python"] - results["cython"]))
        print(f"  max |python - cython| = {diff:.3g}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    bench("field_sum (256 x 37 components, 1000 points)", kernels.field_sum, field_case(),
          args.repeat)
    bench("field_sum (256 x 37 components, 1 point)", kernels.field_sum,
          field_case(n_points=1), args.repeat)
    bench("series_sum (1024 components, 5000 samples)", kernels.series_sum, series_case(),
          args.repeat)


if __name__ == "__main__":
    main()
