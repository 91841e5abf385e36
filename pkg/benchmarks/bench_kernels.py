"""Time the compiled dense kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--sizes 200 800 2000] [--repeat 3]
"""
import argparse
import random
import timeit

from qbailey import _pykernels

try:
    from qbailey import _kernels
except ImportError:
    _kernels = None


def operands(n, bits, rng):
    lim = 2 ** bits
    a = [rng.randrange(-lim, lim) for _ in range(n)]
    b = [rng.randrange(-lim, lim) for _ in range(n)]
    a[0] = 1
    return a, b


def pentagonal(n):
    """Dense coefficients of (q; q)_inf below q^n; its inverse counts partitions."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < n:
                out[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 800, 2000])
    ap.add_argument("--bits", type=int, nargs="+", default=[8, 96])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    impls = [("python", _pykernels)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'kernel':10s} {'n':>6s} {'bits':>5s} " + " ".join(f"{name:>10s}" for name, _ in impls) + "   speedup")
    for n in args.sizes:
        for bits in args.bits:
            a, b = operands(n, bits, rng)
            for kernel, call in (("mul_trunc", lambda m: m.mul_trunc(a, b, n)),
                                 ("inv_trunc", lambda m: m.inv_trunc(a, n))):
                times = [best(lambda m=m: call(m), args.repeat) for _, m in impls]
                ratio = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
                print(f"{kernel:10s} {n:6d} {bits:5d} " + " ".join(f"{t * 1000:8.2f}ms" for t in times) + "  " + ratio)
        # the shape that dominates real runs: sparse +-1 input, slowly growing output
        euler = pentagonal(n)
        times = [best(lambda m=m: m.inv_trunc(euler, n), args.repeat) for _, m in impls]
        ratio = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{'partition':10s} {n:6d} {'-':>5s} " + " ".join(f"{t * 1000:8.2f}ms" for t in times) + "  " + ratio)


if __name__ == "__main__":
    main()
