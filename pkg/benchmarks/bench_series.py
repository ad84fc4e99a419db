"""Compare the numba and numpy series kernels on the same workloads.

    python benchmarks/bench_series.py [--repeat N] [--quick]

Each workload is run on both backends; the partial sums must agree bit for
bit.  Reported times are the best of N runs, after one untimed warm-up (the
numba warm-up includes JIT compilation or cache load).
"""

import argparse
import time

from l2stack import _kernels
from l2stack.reps import parse_rep
from l2stack.rootdata import build_root_datum
from l2stack.series import partial_sum

WORKLOADS = [
    ("A1 x T3", "config(standard,3)", 2, 40),
    ("A1 x T3", "config(standard,3)", 2, 80),
    ("A2 x T4", "config(standard,4)", 2, 16),
    ("B2", "pow(adjoint,2)", 3, 400),
    ("T3", "weights[(1,0,0):1,(0,1,0):1,(0,0,1):1,(-1,-1,-1):1]", 2, 60),
]


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="only the two smallest workloads")
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    work = WORKLOADS[:1] + WORKLOADS[2:3] if args.quick else WORKLOADS
    print(f"{'group':<9} {'rep':<22} {'q':>2} {'H':>4} {'terms':>11} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for group, text, q, H in work:
        rd = build_root_datum(group)
        rep = parse_rep(text, rd)
        t_nb, a = best_of(lambda: partial_sum(rd, rep, q, H, backend="numba"), args.repeat)
        t_np, b = best_of(lambda: partial_sum(rd, rep, q, H, backend="numpy"), args.repeat)
        if a.partial_sums != b.partial_sums:
            raise SystemExit(f"backends disagree on {group} / {text}")
        print(f"{group:<9} {text[:22]:<22} {q:>2} {H:>4} {a.term_count:>11} {t_nb:>9.3f} {t_np:>9.3f} "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
