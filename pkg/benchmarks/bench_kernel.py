"""Benchmark the compiled mod-p elimination kernel against the pure-Python
fallback on representative workloads.

Usage: python benchmarks/bench_kernel.py [--quick]

Workloads:
  * random-span:   bulk insertion of random dense vectors mod 3;
  * aug-chain:     augmentation filtration of F_3[(Z/3)^4] (the inner loop
                   of the monoid-algebra computations);
  * aug-cell:      the fourth augmentation power of a hom-cell of the mod-3
                   linear theory, inserted row by row through the kernel.

The F_2 paths use packed-bitset rows rather than this kernel, so they are
identical under both settings and are not timed here.
"""

from __future__ import annotations

import argparse
import random
import time

from polyaug import kernels
from polyaug.fields import GF
from polyaug.spans import FpSpan


def time_it(fn, repeats=1):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload_random_span(pure: bool, dim: int, count: int, seed: int = 7):
    rng = random.Random(seed)
    vecs = []
    for _ in range(count):
        vecs.append({c: rng.randint(1, 2)
                     for c in rng.sample(range(dim), k=min(dim, 24))})

    def run():
        span = FpSpan(3, dim, pure=pure)
        for v in vecs:
            span.insert(v)
        return span.rank

    return run


def workload_aug_chain(pure: bool):
    from polyaug.finmonoid import elementary_abelian

    mon = elementary_abelian(3, 4)

    def run():
        gens = mon.generating_set()
        span = _PureForcedSpan(mon.size, pure)
        for g in range(mon.size):
            if g != mon.identity:
                span.insert({g: 1, mon.identity: -1})
        for _ in range(3):
            nxt = _PureForcedSpan(mon.size, pure)
            for row in span.row_list():
                for s in gens:
                    vec = {}
                    for idx, c in row.items():
                        t = mon.table[idx][s]
                        vec[t] = vec.get(t, 0) + c
                    for idx, c in row.items():
                        vec[idx] = vec.get(idx, 0) - c
                    nxt.insert(vec)
            span = nxt
        return span.rank

    return run


def _PureForcedSpan(dim, pure):
    return FpSpan(3, dim, pure=pure)


def workload_aug_cell(pure: bool):
    # augmentation powers of a theory cell: every translated basis row goes
    # through the kernel one insert at a time
    from polyaug.lawvere import aug_power_cell, get_theory
    from polyaug.lawvere import ideals as ideals_mod

    theory = get_theory("mod3")

    def run():
        ideals_mod._AUG_CHAINS.clear()
        original = FpSpan.__init__

        def patched(self, p, ncols, main_cols=None, pure_flag=pure):
            original(self, p, ncols, main_cols, pure=pure_flag)

        FpSpan.__init__ = patched
        try:
            cell = aug_power_cell(theory, 3, 2, 2, GF(3))
        finally:
            FpSpan.__init__ = original
        return cell.dim

    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    dim, count = (160, 1200) if args.quick else (400, 4000)
    rows = []
    for name, make in [
        ("random-span", lambda pure: workload_random_span(pure, dim, count)),
        ("aug-chain", workload_aug_chain),
        ("aug-cell", workload_aug_cell),
    ]:
        compiled = time_it(make(False)) if kernels.HAVE_COMPILED else None
        pure = time_it(make(True))
        rows.append((name, compiled, pure))

    print(f"kernel available: {kernels.active_kernel_name()}")
    print(f"{'workload':<14}{'compiled':>12}{'pure':>12}{'speedup':>10}")
    for name, compiled, pure in rows:
        if compiled is None:
            print(f"{name:<14}{'-':>12}{pure:>11.3f}s{'-':>10}")
        else:
            print(f"{name:<14}{compiled:>11.3f}s{pure:>11.3f}s"
                  f"{pure / compiled:>9.1f}x")


if __name__ == "__main__":
    main()
