"""Time the compiled kernels against the Python reference versions.

Usage: python benchmarks/bench_kernels.py [--pmax 100000] [--repeat 5]
"""
import argparse
import json
import timeit

import numpy as np

from quatmod import _kernels_py, kernels, lfun


def inputs(pmax: int, n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    primes = np.array(lfun.primes_up_to(pmax), dtype=float)
    chi = np.ones(len(primes), dtype=complex)
    alphas = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(len(primes), n)))
    skews = []
    for size in (4, 6, 8):
        for _ in range(50):
            A = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
            skews.append(A - A.T)
    return primes, chi, alphas, skews


def bench(impl, primes, chi, alphas, skews, repeat):
    s = 9.5 + 0.5j
    n = alphas.shape[1]
    jobs = {
        "dirichlet_euler": lambda: impl.dirichlet_euler(primes, chi, s),
        "satake_euler": lambda: impl.satake_euler(primes, chi, alphas, s, n, 1),
        "pfaffian_x150": lambda: [impl.pfaffian(A) for A in skews],
    }
    return {k: min(timeit.repeat(f, number=1, repeat=repeat)) for k, f in jobs.items()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pmax", type=int, default=100_000)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    primes, chi, alphas, skews = inputs(args.pmax, args.degree)
    report = {"pmax": args.pmax, "primes": len(primes), "python": bench(_kernels_py, primes, chi, alphas, skews, args.repeat)}
    if kernels.compiled is not None:
        report["compiled"] = bench(kernels.compiled, primes, chi, alphas, skews, args.repeat)
        report["speedup"] = {k: report["python"][k] / report["compiled"][k] for k in report["python"]}
        s = 9.5 + 0.5j
        report["max_rel_diff"] = {
            "dirichlet_euler": abs(kernels.compiled.dirichlet_euler(primes, chi, s) - _kernels_py.dirichlet_euler(primes, chi, s)),
            "satake_euler": abs(kernels.compiled.satake_euler(primes, chi, alphas, s, args.degree, 1)
                                / _kernels_py.satake_euler(primes, chi, alphas, s, args.degree, 1) - 1),
            "pfaffian": max(abs(kernels.compiled.pfaffian(A) - _kernels_py.pfaffian(A)) / max(1, abs(_kernels_py.pfaffian(A)))
                            for A in skews),
        }
    else:
        report["compiled"] = None
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
