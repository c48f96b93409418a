"""Compiled vs numpy minor enumeration.

    python benchmarks/bench_kernels.py [--L 2,4,6,8] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from nlmagic import kernels
from nlmagic.experiments import haar_state


def bench(L, repeat, number=None):
    gamma = np.ascontiguousarray(haar_state(0, L, 0))
    out = {}
    for name, mod in kernels.backends().items():
        fn = lambda: mod.minor_power_sum(gamma, 2.0)
        timer = timeit.Timer(fn)
        n = number or timer.autorange()[0]
        out[name] = min(timer.repeat(repeat, n)) / n, fn()
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--L", default="2,4,6,8")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    names = list(kernels.backends())
    print(f"default backend: {kernels.BACKEND}")
    print("L   " + "".join(f"{n:>14}" for n in names) + "   speedup   max rel diff")
    for L in (int(v) for v in args.L.split(",")):
        res = bench(L, args.repeat)
        times = [res[n][0] for n in names]
        vals = np.array([res[n][1] for n in names])
        speed = res["python"][0] / res["cython"][0] if "cython" in res else 1.0
        diff = np.max(np.abs(vals - vals[0])) / abs(vals[0])
        print(f"{L:<4}" + "".join(f"{t * 1e6:>12.1f}us" for t in times)
              + f"{speed:>10.1f}x   {diff:.1e}")


if __name__ == "__main__":
    main()
