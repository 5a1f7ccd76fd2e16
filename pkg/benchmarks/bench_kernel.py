"""Compare the compiled convolution kernel against the pure-Python one.

Run:  python3 benchmarks/bench_kernel.py [--prec N]
"""

import argparse
import random
import time

from qmod import _pycore, backend


def _dense(rng, n):
    return [rng.randrange(-10**9, 10**9) for _ in range(n)]


def _sparse(rng, n):
    return [rng.randrange(-9, 10) if rng.random() < 0.05 else 0 for _ in range(n)]


def _time(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=2048)
    args = ap.parse_args()
    n = args.prec
    rng = random.Random(12345)

    print(f"active backend: {backend.BACKEND}   precision: {n}")
    cases = [
        ("dense * dense", _dense(rng, n), _dense(rng, n)),
        ("sparse * dense", _sparse(rng, n), _dense(rng, n)),
        ("sparse * sparse", _sparse(rng, n), _sparse(rng, n)),
    ]
    print(f"{'case':<18} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for label, a, b in cases:
        fast = _time(backend.convolve, a, b, n)
        slow = _time(_pycore.convolve, a, b, n)
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{label:<18} {fast * 1000:>9.1f}ms {slow * 1000:>9.1f}ms {ratio:>7.1f}x")

    unit = [1] + _dense(rng, n - 1)
    fast = _time(backend.invert_unit, unit, n)
    slow = _time(_pycore.invert_unit, unit, n)
    ratio = slow / fast if fast > 0 else float("inf")
    print(f"{'invert_unit':<18} {fast * 1000:>9.1f}ms {slow * 1000:>9.1f}ms {ratio:>7.1f}x")

    if backend.BACKEND == "python":
        print("note: compiled backend unavailable; both columns ran the pure kernel")


if __name__ == "__main__":
    main()
