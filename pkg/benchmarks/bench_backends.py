"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_backends.py [--repeat N] [--json out.json]

Times rank over F_(q^k), polynomial gcd and x^(q^k) mod m, and full decodes
(q=2, k in 5..11, rank-1 errors), once per available backend.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import timeit

from spreadcodes import kernels
from spreadcodes.fields import find_irreducible, make_extension_field
from spreadcodes.harness import bench
from spreadcodes.polynomials import UniPoly, frobenius_power_mod, poly_gcd


def _field(q, k):
    return make_extension_field(q, find_irreducible(q, k))


def kernel_cases(seed=0):
    rng = random.Random(seed)
    F = _field(2, 11)
    M = [[rng.randrange(F.order) for _ in range(11)] for _ in range(11)]
    a = UniPoly(F, [rng.randrange(F.order) for _ in range(200)] + [1])
    b = UniPoly(F, [rng.randrange(F.order) for _ in range(150)] + [1])
    m = UniPoly(F, [rng.randrange(F.order) for _ in range(40)] + [1])
    return {
        "rank 11x11 over F_2^11": lambda: kernels.rank(M, F),
        "gcd deg 200/150 over F_2^11": lambda: poly_gcd(a, b),
        "x^(2^11) mod deg-40": lambda: frobenius_power_mod(m),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)

    result = {"kernels": {}, "decode": None}
    cases = kernel_cases()
    for name, fn in cases.items():
        row = {}
        for b in kernels.available_backends():
            with kernels.use_backend(b):
                fn()
                row[b] = statistics.median(timeit.repeat(fn, number=1, repeat=args.repeat))
        result["kernels"][name] = row
    result["decode"] = bench(2, [5, 7, 9, 11], args.trials)

    backends = kernels.available_backends()
    print(f"{'case':34s}" + "".join(f"{b:>12s}" for b in backends))
    for name, row in result["kernels"].items():
        print(f"{name:34s}" + "".join(f"{row[b] * 1e3:10.3f}ms" for b in backends))
    for row in result["decode"]["results"]:
        name = f"decode q=2 k={row['k']} t=1"
        print(f"{name:34s}" + "".join(f"{row['median_seconds'][b] * 1e3:10.3f}ms" for b in backends))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2)


if __name__ == "__main__":
    main()
