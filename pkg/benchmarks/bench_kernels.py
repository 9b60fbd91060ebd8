"""Compare the compiled and pure-Python integer matmul kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from ncad import _kernels_py

try:
    from ncad import _kernels
except ImportError:
    _kernels = None


def operands(n, bound, seed):
    rng = random.Random(seed)
    a = [rng.randint(-bound, bound) for _ in range(n * n)]
    b = [rng.randint(-bound, bound) for _ in range(n * n)]
    return a, b


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled kernels unavailable; timing the fallback only")
    print(f"{'n':>4} {'entries':>10} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for n in (4, 8, 16, 32, 64):
        for bound, label in ((10**3, "small"), (10**30, "bignum")):
            a, b = operands(n, bound, n)
            ref = _kernels_py.int_matmul(a, b, n, n, n)
            times = []
            for _, mod in backends:
                assert mod.int_matmul(a, b, n, n, n) == ref
                number = max(1, 2000 // (n * n))
                t = min(timeit.repeat(lambda: mod.int_matmul(a, b, n, n, n), number=number, repeat=args.repeat))
                times.append(t / number)
            speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
            print(f"{n:>4} {label:>10} " + " ".join(f"{t * 1e6:10.1f}us" for t in times) + f" {speed}")


if __name__ == "__main__":
    main()
