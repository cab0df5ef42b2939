#!/usr/bin/env python3
"""Benchmark the compiled Numerov kernel against the pure-Python fallback.

Times (a) raw outward sweeps on a fixed grid and (b) a full bound-state
solve including bisection and grid refinement, then prints the speedup.

    python benchmarks/bench_numerov.py [--points 200001] [--repeats 5]
"""

import argparse
import time

import numpy as np

from yukawa_atom import AtomicSystem, QuantumState, RadialGrid, screening_delta, ScreeningModel
from yukawa_atom import _numerov_py
from yukawa_atom.oracle import solve_bound_state

try:
    from yukawa_atom import _numerov_ext
except ImportError:
    _numerov_ext = None


def time_sweeps(kernel, w, h, u0, u1, energies, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for e in energies:
            kernel.count_nodes_sweep(w, e, h, u0, u1)
        best = min(best, time.perf_counter() - t0)
    return best / len(energies)


def time_solve(kernel, repeats):
    system = AtomicSystem(29)
    state = QuantumState(0, 0)
    delta = screening_delta(29, ScreeningModel())
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        res = solve_bound_state(system, delta, state, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=200001)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    # representative K-shell sweep: Z=29, screened potential, l=0
    delta = screening_delta(29, ScreeningModel())
    r = np.linspace(1e-6, 20.0, args.points)
    h = r[1] - r[0]
    w = -2.0 * 29.0 * np.exp(-delta * r) / r
    u0, u1 = r[0], r[1]
    energies = np.linspace(-600.0, -1.0, 8)

    print(f"grid points: {args.points}, repeats: {args.repeats} (best shown)")
    print()
    py_sweep = time_sweeps(_numerov_py, w, h, u0, u1, energies, args.repeats)
    print(f"raw sweep   pure-python  {py_sweep * 1e3:9.3f} ms "
          f"({py_sweep / args.points * 1e9:6.2f} ns/point)")
    if _numerov_ext is not None:
        ext_sweep = time_sweeps(_numerov_ext, w, h, u0, u1, energies, args.repeats)
        print(f"raw sweep   compiled     {ext_sweep * 1e3:9.3f} ms "
              f"({ext_sweep / args.points * 1e9:6.2f} ns/point)")
        print(f"raw sweep   speedup      {py_sweep / ext_sweep:9.1f} x")
    print()

    py_solve, py_res = time_solve(_numerov_py, max(1, args.repeats // 2))
    print(f"full solve  pure-python  {py_solve:9.3f} s   (E = {py_res.energy:.8f})")
    if _numerov_ext is not None:
        ext_solve, ext_res = time_solve(_numerov_ext, args.repeats)
        print(f"full solve  compiled     {ext_solve:9.3f} s   (E = {ext_res.energy:.8f})")
        print(f"full solve  speedup      {py_solve / ext_solve:9.1f} x")
        if ext_res.energy != py_res.energy:
            print("warning: backends disagree!")
    else:
        print("compiled kernel not available; install with Cython and a C compiler")


if __name__ == "__main__":
    main()
