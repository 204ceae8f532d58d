"""Timing comparison of the compiled and pure-numpy kernel backends.

Run: python3 benchmarks/bench_kernels.py [--points N] [--degree N]

Each kernel is warmed (triggering any compilation), then timed over
enough repeats for a stable median.  The same arrays are fed to both
backends, so the table isolates the dispatch choice that the
TURANLAB_BACKEND environment variable controls.
"""

import argparse
import time
from statistics import median

import numpy as np

from turanlab import available_backends, get_impl


def _inputs(points: int, degree: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, points)
    z = np.exp(1j * angles)
    roots = (rng.uniform(-0.7, 0.7, degree)
             + 1j * rng.uniform(-0.7, 0.7, degree))
    m = 40
    pts = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, m))
    return z, roots, pts


def _time(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return median(samples)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=1 << 18)
    ap.add_argument("--degree", type=int, default=16)
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    backends = available_backends()
    z, roots, pts = _inputs(args.points, args.degree)
    cases = {
        "poly_log_eval": lambda impl: impl["poly_log_eval"](z, roots),
        "poly_eval": lambda impl: impl["poly_eval"](z, roots),
        "recip_sum": lambda impl: impl["recip_sum"](z, roots),
        "riemann_pow_sums": lambda impl: impl["riemann_pow_sums"](
            z, roots, 2.0),
        "pairwise_log_sum": lambda impl: impl["pairwise_log_sum"](pts),
        "sum_log_dists": lambda impl: impl["sum_log_dists"](
            z[:4096], pts),
    }

    print(f"points={args.points} degree={args.degree} "
          f"repeats={args.repeats} backends={backends}")
    header = f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases.items():
        times = []
        for backend in backends:
            impl = get_impl(backend)
            call(impl)  # warm: compile and fault pages
            times.append(_time(lambda: call(impl), args.repeats))
        row = f"{name:<18}" + "".join(f"{t * 1e3:>10.2f}ms"
                                      for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
