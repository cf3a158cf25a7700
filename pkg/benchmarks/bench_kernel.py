"""Compare the compiled and numpy kernels on arc construction.

    python benchmarks/bench_kernel.py            # default q sweep
    python benchmarks/bench_kernel.py 1009 4999  # chosen primes
"""
import argparse
import time

from pgarcs import kernel
from pgarcs.constructors import fop_complete, make_lex_order, random_complete
from pgarcs.geometry import PlaneParams
from pgarcs.singer import singer_point_order


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("q", nargs="*", type=int, default=[101, 401, 1009, 2003, 4999])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = kernel.available_backends()
    print(f"backends: {', '.join(sorted(backends))} (default: {kernel.BACKEND})")
    header = f"{'q':>6} {'task':<12}" + "".join(f"{name:>12}" for name in sorted(backends)) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for q in args.q:
        p = PlaneParams(q)
        tasks = {
            "random": lambda mod: random_complete(p, args.seed, verify=False, backend=mod).size,
            "fop-lex": lambda mod: fop_complete(p, make_lex_order(p), verify=False, backend=mod).size,
            "singer-seq": lambda mod: len(singer_point_order(p, backend=mod).permutation),
        }
        for name, task in tasks.items():
            row, results = {}, set()
            for bname in sorted(backends):
                t, out = best_of(lambda: task(backends[bname]), args.repeat)
                row[bname] = t
                results.add(out)
            assert len(results) == 1, f"backends disagree on {name} q={q}: {results}"
            speed = row["python"] / row["cython"] if "cython" in row else float("nan")
            cells = "".join(f"{row[b]:>11.3f}s" for b in sorted(backends))
            print(f"{q:>6} {name:<12}{cells}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
