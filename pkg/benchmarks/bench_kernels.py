#!/usr/bin/env python3
"""Compare the compiled bitset kernels against the pure-Python twin.

Times the connected-subset argmax-cut enumeration (the hot loop behind
the brute-force oracle) and the induced-connectivity check used by the
sampling solver. Both backends run the same algorithm, so results must
agree exactly; this script asserts that while timing.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from conncut import _bitset_py as py
from conncut.generators import generate_instance
from conncut.graph import Graph

try:
    from conncut import _bitset_cy as cy
except ImportError:
    cy = None


def gnp(n, p, seed):
    rng = random.Random(seed)
    return Graph(n, [(u, v, rng.choice([0, 1, 1]))
                     for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p])


def time_best_cut(backend, g, repeat):
    nbrs, wts = g.neighbor_weights()
    best = None
    t0 = time.perf_counter()
    for _ in range(repeat):
        best = backend.best_connected_cut(g.n, g.adj_masks, nbrs, wts)
    return (time.perf_counter() - t0) / repeat, best


def time_connectivity(backend, g, trials, repeat):
    rng = random.Random(7)
    masks = [rng.getrandbits(g.n) for _ in range(trials)]
    acc = 0
    t0 = time.perf_counter()
    for _ in range(repeat):
        acc = sum(1 for m in masks if m and backend.is_connected_mask(g.adj_masks, m))
    return (time.perf_counter() - t0) / repeat, acc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if cy is None:
        print("compiled backend not available; showing pure-Python timings only")

    instances = [
        ("gnp(14, .35)", gnp(14, 0.35, 1)),
        ("gnp(16, .30)", gnp(16, 0.30, 2)),
        ("gnp(18, .25)", gnp(18, 0.25, 3)),
        ("hypercube(4)", generate_instance("hypercube", {"d": 4}).graph),
        ("grid(4x5)", generate_instance("grid", {"rows": 4, "cols": 5}).graph),
    ]

    print(f"{'instance':<14} {'kernel':<22} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, g in instances:
        t_py, r_py = time_best_cut(py, g, args.repeat)
        row = f"{name:<14} {'argmax connected cut':<22} {t_py * 1e3:9.1f}ms"
        if cy is not None:
            t_cy, r_cy = time_best_cut(cy, g, args.repeat)
            assert r_py == r_cy, f"backend mismatch on {name}: {r_py} vs {r_cy}"
            row += f" {t_cy * 1e3:9.1f}ms {t_py / t_cy:7.1f}x"
        print(row)

    q4 = generate_instance("hypercube", {"d": 4}).graph
    t_py, a_py = time_connectivity(py, q4, 2000, args.repeat)
    row = f"{'hypercube(4)':<14} {'connectivity x2000':<22} {t_py * 1e3:9.1f}ms"
    if cy is not None:
        t_cy, a_cy = time_connectivity(cy, q4, 2000, args.repeat)
        assert a_py == a_cy
        row += f" {t_cy * 1e3:9.1f}ms {t_py / t_cy:7.1f}x"
    print(row)


if __name__ == "__main__":
    main()
