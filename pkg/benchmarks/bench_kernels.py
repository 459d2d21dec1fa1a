"""Compare the compiled and numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-``repeat`` wall time per kernel and size, plus the speedup.
"""
import argparse
import math
import timeit

import numpy as np

from grovermem import kernels

CASES = [
    # (kernel, N, iterations)
    ("grover_run", 80, 3),
    ("grover_run", 80, 1000),
    ("grover_run", 4096, 20),
    ("grover_run", 4096, 1000),
    ("grover_run", 2**16, 200),
    ("grover_run_circuit", 1024, 200),
    ("grover_run_circuit", 2**14, 50),
    ("fwht", 2**10, 1),
    ("fwht", 2**16, 1),
    ("fwht", 2**20, 1),
]


def make_call(backend, kernel, n, iterations):
    mod = kernels.get_backend(backend)
    psi0 = np.full(n, 1 / math.sqrt(n), dtype=np.complex128)
    phi = 2.5
    if kernel == "fwht":
        return lambda: mod.fwht(psi0.copy())
    if kernel == "grover_run":
        return lambda: mod.grover_run(psi0.copy(), 1, np.exp(1j * phi), 1 - np.exp(1j * phi), iterations)
    return lambda: mod.grover_run_circuit(psi0.copy(), 1, np.exp(1j * phi), np.exp(1j * phi), iterations)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = sorted(kernels.BACKENDS)
    print(f"backends available: {', '.join(backends)}")
    print(f"{'kernel':<20}{'N':>9}{'iters':>7}" + "".join(f"{b + ' [ms]':>16}" for b in backends) + f"{'speedup':>10}")
    for kernel, n, iterations in CASES:
        times = {}
        for b in backends:
            call = make_call(b, kernel, n, iterations)
            number = max(1, int(0.05 / max(timeit.timeit(call, number=1), 1e-7)))
            times[b] = min(timeit.repeat(call, number=number, repeat=args.repeat)) / number * 1e3
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        print(f"{kernel:<20}{n:>9}{iterations:>7}" + "".join(f"{times[b]:>16.4f}" for b in backends) + f"{speed:>10}")


if __name__ == "__main__":
    main()
