"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Covers the three hot paths: dense polynomial gcd over F_p (the genus
computation's workload), multiplicative table construction, and the
point-counting scan. Results are wall-clock medians over --repeat runs.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from fftower import _corepy as pure
from fftower.fields import make_field
from fftower.intutil import prime_divisors

try:
    from fftower import _core as compiled
except ImportError:
    compiled = None


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), out


def bench_gcd(impl, repeat):
    rng = random.Random(42)
    p = 13
    a = [rng.randrange(p) for _ in range(2400)] + [1]
    b = [rng.randrange(p) for _ in range(2399)] + [1]
    return timed(lambda: impl.zp_gcd(a, b, p), repeat)


def bench_tables(impl, repeat):
    spec = make_field(5, 7)
    fac = tuple(prime_divisors(5**7 - 1))
    return timed(lambda: impl.build_tables(5, 7, spec.modulus, fac)[3], repeat)


def bench_count(impl, repeat):
    spec = make_field(5, 7)
    Q = 5**7
    fac = tuple(prime_divisors(Q - 1))
    exp, log, zech, _ = (compiled or pure).build_tables(5, 7, spec.modulus, fac)
    rng = random.Random(7)
    num_logs = [log[rng.randrange(Q)] for _ in range(10)]
    den_logs = [log[rng.randrange(1, Q)] for _ in range(9)]
    return timed(lambda: impl.count_units_range(log, zech, Q, 2,
                                                num_logs, den_logs, 0, Q)[0], repeat)


BENCHES = [
    ("poly gcd deg 2400 over F_13", bench_gcd),
    ("exp/log/zech tables for F_5^7", bench_tables),
    ("counting scan over F_5^7", bench_count),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if compiled is None:
        print("compiled core not built; showing pure-python numbers only")
    print(f"{'benchmark':38s} {'pure':>10s} {'compiled':>10s} {'speedup':>9s}")
    for name, bench in BENCHES:
        t_pure, out_pure = bench(pure, args.repeat)
        if compiled is not None:
            t_comp, out_comp = bench(compiled, args.repeat)
            assert out_pure == out_comp, f"implementations disagree on {name}"
            print(f"{name:38s} {t_pure:9.3f}s {t_comp:9.3f}s {t_pure / t_comp:8.1f}x")
        else:
            print(f"{name:38s} {t_pure:9.3f}s {'-':>10s} {'-':>9s}")


if __name__ == "__main__":
    main()
