"""Compare the numba and pure-numpy kernel implementations.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are called directly (the env flag only picks the
default), outputs are checked for equality, and the best wall time of
``--repeat`` runs is printed per kernel.  The first numba call is a warm-up
so compile time is not counted.
"""

import argparse
import time

import numpy as np

from twlab import kernels
from twlab.biring import QuotientAlgebra
from twlab.finring import ring
from twlab.toycoh import FunctionRing


def workloads():
    R = ring("GF(2,2)")
    Q = QuotientAlgebra(R, 4)  # 256 elements
    n = Q.size
    left = np.repeat(Q.coeffs, n, axis=0)
    right = np.tile(Q.coeffs, (n, 1))
    comp = np.asarray(Q.compose_table)
    scalar = np.arange(R.size, dtype=np.int64)
    Z = ring("Z/2xZ/3xZ/5")  # 30 elements
    F = FunctionRing(ring("GF(3,1)"))
    # coadd expansion of every function, CSR layout over the delta basis
    ptr, lt, rt = [0], [], []
    Rq = ring("GF(3,1)")
    for a in range(F.size):
        for r1 in range(3):
            for r2 in range(3):
                v = F.tables[a, Rq.add_table[r1, r2]]
                lt.append(F.index([v if s == r1 else 0 for s in range(3)]))
                rt.append(F.index([1 if s == r2 else 0 for s in range(3)]))
        ptr.append(len(lt))
    ptr, lt, rt = (np.array(v, dtype=np.int64) for v in (ptr, lt, rt))
    add_f, mul_f = np.asarray(F.add_table), np.asarray(F.mul_table)
    comp_f = np.asarray(F.compose_table)
    return {
        "table_conv": lambda impl: impl["table_conv"](
            left, right, Q.exponent_index, Q.q, R.add_table, R.mul_table, R.zero),
        "eval_points": lambda impl: impl["eval_points"](Q.coeffs, R.add_table, R.mul_table, R.zero, R.one),
        "compose_table": lambda impl: impl["compose_table"](
            Q.coeffs, scalar, Q.add_table, Q.mul_table, 0, 1),
        "ring_axioms": lambda impl: impl["ring_axioms"](Z.add_table, Z.mul_table, Z.neg_table, 0, 1),
        "assoc_violations": lambda impl: impl["assoc_violations"](comp),
        "left_compat": lambda impl: impl["left_compat"](comp, Q.mul_table),
        "right_coterm": lambda impl: impl["right_coterm"](comp_f, add_f, add_f, mul_f, 0, ptr, lt, rt),
    }


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernels.IMPLEMENTATIONS
    have_numba = "numba" in impls
    print(f"{'kernel':<18}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, run in workloads().items():
        t_np, out_np = best_of(lambda: run(impls["numpy"]), args.repeat)
        if have_numba:
            run(impls["numba"])  # compile
            t_nb, out_nb = best_of(lambda: run(impls["numba"]), args.repeat)
            assert np.array_equal(np.asarray(out_np), np.asarray(out_nb)), name
            print(f"{name:<18}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<18}{t_np:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
