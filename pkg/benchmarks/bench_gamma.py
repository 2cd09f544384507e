"""Compare the compiled log-Gamma kernel against the numpy fallback.

Runs both backends on identical complex batches, checks they agree to
double-precision roundoff, and reports per-element timings plus the speedup.

    python3 benchmarks/bench_gamma.py
    python3 benchmarks/bench_gamma.py --sizes 1000 100000 --repeats 9 --json
"""

import argparse
import json
import statistics
import sys
import time

import numpy as np

try:
    from whitlab import _gammacore
except ImportError:
    _gammacore = None
from whitlab import _gammacore_py


def draw_batch(rng, n):
    # Same argument region the integrands live in: moderate real part,
    # imaginary part spread over the decaying tails.
    re = rng.uniform(0.05, 6.0, n)
    im = rng.uniform(-40.0, 40.0, n)
    return re + 1j * im


def time_kernel(fn, z, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(z)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 10_000, 1_000_000])
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--json", action="store_true", help="emit one JSON object instead of a table")
    args = ap.parse_args(argv)

    if _gammacore is None:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    rng = np.random.default_rng(args.seed)
    check = draw_batch(rng, 4096)
    gap = np.max(np.abs(_gammacore.loggamma_arr(check) - _gammacore_py.loggamma(check)))
    rows = []
    for n in args.sizes:
        z = draw_batch(rng, n)
        t_c = time_kernel(_gammacore.loggamma_arr, z, args.repeats)
        t_py = time_kernel(_gammacore_py.loggamma, z, args.repeats)
        rows.append(
            {
                "n": n,
                "ns_per_elem_c": 1e9 * t_c / n,
                "ns_per_elem_py": 1e9 * t_py / n,
                "speedup": t_py / t_c,
            }
        )

    if args.json:
        print(json.dumps({"max_abs_disagreement": float(gap), "rows": rows}, indent=2))
        return 0

    print(f"backend agreement: max |c - py| = {gap:.3e} over 4096 points")
    print(f"{'n':>10}  {'compiled ns/el':>14}  {'numpy ns/el':>12}  {'speedup':>8}")
    for r in rows:
        print(
            f"{r['n']:>10}  {r['ns_per_elem_c']:>14.1f}  "
            f"{r['ns_per_elem_py']:>12.1f}  {r['speedup']:>7.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
