"""Time the Neumann kernel: compiled extension vs numpy fallback.

    python benchmarks/bench_neumann.py [--repeat 5]
"""
import argparse
import timeit

from nfccoil import CoilGeometry, discretize_coil, rectangular_loop
from nfccoil import kernels

ANTENNA1 = CoilGeometry("rectangular", 160, 80, 4, 0.5, 2.0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = {"python": kernels.neumann_sum_py}
    if kernels.neumann_sum_ext is not None:
        backends["cython"] = kernels.neumann_sum_ext
    print(f"selected backend: {kernels.BACKEND}")
    print(f"{'subdiv':>6} {'pairs':>10} " + " ".join(f"{n + ' ms':>12}" for n in backends)
          + f" {'speedup':>8}")
    for k in (20, 40, 80, 160):
        reader = rectangular_loop(0.04, 0.04, 0.0, k)
        tag = discretize_coil(ANTENNA1, 0.03, k)
        arrays = (reader.midpoints, reader.vectors, tag.midpoints, tag.vectors)
        times = {}
        for name, fn in backends.items():
            best = min(timeit.repeat(lambda: fn(*arrays), number=1, repeat=args.repeat))
            times[name] = best * 1e3
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{k:>6} {len(reader) * len(tag):>10} "
              + " ".join(f"{t:>12.2f}" for t in times.values()) + f" {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
