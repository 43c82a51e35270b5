"""Benchmark the compiled kernels against the pure-Python reference.

Times the hot per-instance operations on synthetic workloads and an
end-to-end exhaustive sweep, printing one row per (operation, n).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from roughmap import kernels
from roughmap.search import verify


def make_workload(rng, n, m, count):
    cases = []
    for _ in range(count):
        rgs = [0]
        for _ in range(n - 1):
            rgs.append(rng.randint(0, max(rgs) + 1))
        rgs = tuple(rgs)
        table = tuple(rng.randrange(m) for _ in range(n))
        rgs2 = [0]
        for _ in range(n - 1):
            rgs2.append(rng.randint(0, max(rgs2) + 1))
        xmask = rng.randrange(1 << n)
        cases.append((rgs, tuple(rgs2), table, xmask))
    return cases


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel_ops(repeat):
    rng = random.Random(1)
    rows = []
    for n, m in [(6, 3), (12, 4), (24, 6), (48, 8), (64, 8)]:
        cases = make_workload(rng, n, m, 2000)
        for name, backend in kernels.backends().items():
            pre = [
                (rgs, rgs2, table, backend.fiber_masks(table, m), xmask)
                for rgs, rgs2, table, xmask in cases
            ]

            def run_relmap():
                for rgs, _, table, fibers, _ in pre:
                    backend.relmap_classified(rgs, table, fibers)

            def run_lattice():
                for rgs, rgs2, _, _, _ in pre:
                    backend.meet_rgs(rgs, rgs2)
                    backend.join_rgs(rgs, rgs2)
                    backend.refines_rgs(rgs, rgs2)

            def run_approx():
                for rgs, _, _, _, xmask in pre:
                    backend.lower_upper_masks(backend.block_masks(rgs), xmask)

            rows.append((f"relmap+classify n={n}", name, bench(run_relmap, repeat)))
            rows.append((f"meet/join/refines n={n}", name, bench(run_lattice, repeat)))
            rows.append((f"approximations n={n}", name, bench(run_approx, repeat)))
    return rows


def bench_end_to_end(repeat):
    import os

    rows = []
    for forced, name in [(None, kernels.BACKEND), ("1", "python")]:
        if forced is None and kernels.BACKEND == "python":
            continue  # no compiled build to compare against
        env = os.environ.copy()
        # the backend is chosen at import, so fork a fresh interpreter
        import subprocess
        import sys

        if forced:
            env["ROUGHMAP_PURE_PYTHON"] = forced
        code = (
            "import time; from roughmap.search import verify;"
            "t0=time.perf_counter(); verify('T42-1', max_u=5);"
            "print(time.perf_counter()-t0)"
        )
        best = float("inf")
        for _ in range(repeat):
            out = subprocess.run(
                [sys.executable, "-c", code], env=env, capture_output=True, text=True
            )
            best = min(best, float(out.stdout.strip()))
        rows.append(("verify T42-1 n<=5 (205698 instances)", name, best))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    args = ap.parse_args()

    print(f"available backends: {', '.join(kernels.backends())}")
    rows = bench_kernel_ops(args.repeat) + bench_end_to_end(args.repeat)

    by_op = {}
    for op, backend, t in rows:
        by_op.setdefault(op, {})[backend] = t
    width = max(len(op) for op in by_op)
    print(f"{'workload (2000 cases unless noted)':{width}}  {'python':>10}  {'c':>10}  {'speedup':>8}")
    for op, times in by_op.items():
        py = times.get("python")
        c = times.get("c")
        ratio = f"{py / c:7.1f}x" if py and c else "      --"
        pys = f"{py * 1e3:8.1f}ms" if py else "        --"
        cs = f"{c * 1e3:8.1f}ms" if c else "        --"
        print(f"{op:{width}}  {pys}  {cs}  {ratio}")


if __name__ == "__main__":
    main()
