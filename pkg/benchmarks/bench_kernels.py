"""Compare the compiled iteration kernel against the numpy fallback.

Runs the same batched phase matrices through both backends, reports wall
times, speedup, and the largest probability disagreement.  Usage:

    python3 benchmarks/bench_kernels.py [--points 250000] [--iters 7] [--repeats 5]
"""

from __future__ import annotations

import argparse
import importlib
import math
import time

import numpy as np


def _load_backend(name: str):
    module = importlib.import_module(f"groverlab._kernel_{name[:2]}")
    return module.run_phases_batch


def _time_backend(fn, theta, phis, omegas, repeats: int) -> tuple[float, np.ndarray]:
    best = math.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(theta, phis, omegas, False)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=250_000)
    parser.add_argument("--iters", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--size", type=int, default=100, help="register size N")
    args = parser.parse_args()

    from groverlab.kernels import available_backends

    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend unavailable; timing the fallback only")

    theta = 2.0 * math.asin(math.sqrt(1.0 / args.size))
    rng = np.random.default_rng(7)
    phis = rng.uniform(0.0, 2.0 * math.pi, size=(args.iters, args.points))
    omegas = rng.uniform(0.0, 2.0 * math.pi, size=(args.iters, args.points))

    results = {}
    for name in backends:
        fn = _load_backend(name)
        elapsed, probs = _time_backend(fn, theta, phis, omegas, args.repeats)
        results[name] = (elapsed, probs)
        rate = args.points / elapsed / 1e6
        print(f"{name:>7}: {elapsed * 1e3:8.2f} ms  ({rate:6.2f} Mpoint/s)")

    if len(results) == 2:
        t_cy, p_cy = results["cython"]
        t_py, p_py = results["python"]
        diff = float(np.max(np.abs(p_cy - p_py)))
        print(f"speedup: {t_py / t_cy:.2f}x   max |dp|: {diff:.3g}")


if __name__ == "__main__":
    main()
