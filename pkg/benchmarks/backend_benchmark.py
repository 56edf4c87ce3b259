"""Compare the compiled kernel backend against the pure-Python fallback.

Usage: python3 benchmarks/backend_benchmark.py [--hands N] [--repeats K]

Times the two hot kernels (full-tree evaluation and best response) plus one
solver iteration for each algorithm, on both benchmark games.
"""

import argparse
import time

import numpy as np

from efgsolve import _kernels
from efgsolve._kernels import _pure
from efgsolve.games import GameParams, build_asymmetric, build_bet_raise
from efgsolve.solvers import make_solver
from efgsolve.tree import BehaviorProfile

try:
    from efgsolve._kernels import _core
except ImportError:
    _core = None


def bench(fn, repeats):
    fn()  # warm-up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats * 1e3


def kernel_rows(tree, repeats):
    probs = BehaviorProfile.uniform(tree).probs
    backends = [("python", _pure)] + ([("compiled", _core)] if _core else [])
    rows = []
    for kernel in ("evaluate", "best_response"):
        times = {}
        for name, mod in backends:
            ws = _kernels.Workspace(tree)
            out = probs.copy()
            if kernel == "evaluate":
                fn = lambda: mod.evaluate(tree, probs, 1, ws)
            else:
                fn = lambda: mod.best_response(tree, probs, 1, 0.0, ws, out)
            times[name] = bench(fn, repeats)
        rows.append((kernel, times))
    return rows


def solver_rows(tree, repeats):
    rows = []
    for alg in ("gxfp", "xfp", "cfr"):
        state = make_solver(alg, tree)
        rows.append((f"{alg} step", {"current": bench(
            lambda: state.step("alternating"), repeats)}))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--hands", type=int, default=100)
    ap.add_argument("--repeats", type=int, default=50)
    args = ap.parse_args()

    print(f"active backend: {_kernels.BACKEND}"
          + ("" if _core else "  (compiled extension not built)"))
    games = {
        "asym": build_asymmetric(GameParams(args.hands, 0.5, 1.0)),
        "betraise": build_bet_raise(GameParams(args.hands, 0.5, 1.0, 1.0)),
    }
    for name, tree in games.items():
        print(f"\n{name}  (N={args.hands}, {tree.n_nodes} nodes)")
        print(f"  {'kernel':<16} {'python':>10} {'compiled':>10} {'speedup':>9}")
        for kernel, times in kernel_rows(tree, args.repeats):
            py = times["python"]
            if "compiled" in times:
                cy = times["compiled"]
                print(f"  {kernel:<16} {py:>8.3f}ms {cy:>8.3f}ms {py / cy:>8.1f}x")
            else:
                print(f"  {kernel:<16} {py:>8.3f}ms {'-':>10} {'-':>9}")
        for label, times in solver_rows(tree, args.repeats):
            print(f"  {label:<16} {times['current']:>8.3f}ms  (active backend)")


if __name__ == "__main__":
    main()
