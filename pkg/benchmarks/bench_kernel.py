#!/usr/bin/env python3
"""Compare the compiled and pure-Python arithmetic kernels.

Two views: microbenchmarks of the raw kernel entry points (polynomial
products, wedge accumulation) and a suite-level run of two representative
verification suites.  Usage:

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from ruminalg import _poly_kernel as pure_kernel
from ruminalg import poly
from ruminalg.forms import ContactModel, random_form, random_poly
from ruminalg.prng import stream

try:
    from ruminalg import _poly_kernel_c as compiled_kernel
except ImportError:
    compiled_kernel = None


def bench_poly_mul(kernel, repeat):
    rng = stream(7, 0)
    polys = [random_poly(rng, 7, 4).terms for _ in range(40)]
    start = time.perf_counter()
    for _ in range(repeat):
        acc = {(0,) * 7: Fraction(1)}
        for p in polys:
            acc = kernel.poly_mul(acc, p) if len(acc) < 3000 else p
    return time.perf_counter() - start


def bench_wedge_terms(kernel, repeat):
    model = ContactModel(3)
    fa = random_form(model, stream(9, 1), 3, 3)
    fb = random_form(model, stream(9, 2), 3, 3)
    ta = {i: p.terms for i, p in fa.terms.items()}
    tb = {i: p.terms for i, p in fb.terms.items()}
    start = time.perf_counter()
    for _ in range(500 * repeat):
        kernel.wedge_terms(ta, tb)
    return time.perf_counter() - start


def bench_suites(kernel, repeat):
    from ruminalg.suites import run_suite

    poly.set_kernel(kernel)
    start = time.perf_counter()
    for _ in range(repeat):
        run_suite("dsa-lemma", n=2, trials=100, seed=0)
        run_suite("stasheff", n=2, trials=25, seed=0)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if compiled_kernel is None:
        print("compiled kernel not built (pip install . or python setup.py build_ext --inplace)")
        print("timing the pure-Python kernel only:")
        for name, fn in [("poly_mul", bench_poly_mul), ("wedge_terms", bench_wedge_terms), ("suites", bench_suites)]:
            print(f"  {name:12s} {fn(pure_kernel, args.repeat):8.3f}s")
        return

    print(f"{'benchmark':14s} {'pure':>9s} {'cython':>9s} {'speedup':>8s}")
    for name, fn in [("poly_mul", bench_poly_mul), ("wedge_terms", bench_wedge_terms), ("suites", bench_suites)]:
        t_pure = fn(pure_kernel, args.repeat)
        t_fast = fn(compiled_kernel, args.repeat)
        print(f"{name:14s} {t_pure:8.3f}s {t_fast:8.3f}s {t_pure / t_fast:7.2f}x")
    poly.set_kernel(compiled_kernel)


if __name__ == "__main__":
    main()
