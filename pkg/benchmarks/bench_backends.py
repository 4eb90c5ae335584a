"""Compare the compiled and pure-Python kernel backends on the hot paths.

Usage: python benchmarks/bench_backends.py [--repeat N]

Times close_group (BFS subgroup closure), orders_histogram, and
invariant_subspace on fixed workloads over F_2 and F_3, checks that both
backends return identical results, and prints a speedup table.
"""

import argparse
import time

from gsp4kit import ff, gsp4core, induced
from gsp4kit.backend import get_kernels
from gsp4kit.tables import field_tables


def _workloads():
    out = []
    for ell in (2, 3):
        spec = ff.make_field(ell, 1)
        tables = field_tables(spec)
        gens = [g.entries for g in gsp4core.sp4_transvection_generators(spec)]
        out.append((f"close_group Sp(4,{ell})",
                    lambda k, g=gens, t=tables: k.close_group(g, 4, t, 10**6)))
    spec3 = ff.make_field(3, 1)
    tables3 = field_tables(spec3)
    gens3 = [g.entries for g in gsp4core.sp4_transvection_generators(spec3)]
    elems3 = get_kernels("python").close_group(gens3, 4, tables3, 10**6)[0]
    out.append(("orders_histogram Sp(4,3)",
                lambda k: k.orders_histogram(elems3, 4, tables3)))
    rep = induced.build_induced(induced.validate_params(13, 5, 3))
    spec27 = rep.t.spec
    tables27 = field_tables(spec27)
    ind_gens = [g.entries for g in rep.generators()]
    for dim in (1, 2):
        out.append((f"invariant_subspace dim {dim} (induced, F_27)",
                    lambda k, g=ind_gens, t=tables27, d=dim:
                    k.invariant_subspace(g, d, t, 10**7)))
    return out


def bench(repeat):
    py = get_kernels("python")
    cy = get_kernels("cython")
    rows = []
    for name, fn in _workloads():
        results = {}
        timings = {}
        for label, kernels in (("python", py), ("cython", cy)):
            best = float("inf")
            for _ in range(repeat):
                start = time.perf_counter()
                results[label] = fn(kernels)
                best = min(best, time.perf_counter() - start)
            timings[label] = best
        assert results["python"] == results["cython"], f"backend mismatch: {name}"
        rows.append((name, timings["python"], timings["cython"]))
    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        print(f"{name:<{width}}  {tp:>9.4f}s  {tc:>9.4f}s  {tp / tc:>7.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per workload (best is kept)")
    bench(parser.parse_args().repeat)
