#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernel against the pure-Python fallback.

Builds a chain of binary variables (each node conditioned on its
predecessor), attaches a likelihood-ratio finding to every third variable,
and times a joint posterior over three variables.  Enumeration cost grows as
2^n, so the chain length sweep shows where the compiled kernel starts to
matter.

Usage: python benchmarks/bench_kernels.py [--sizes 10,14,16,18] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from credence import (
    ConditionalTable,
    EvidenceSet,
    Network,
    Node,
    Variable,
    VirtualFinding,
    kernel,
)
from credence.inference import _weight_vectors


def chain_network(n: int) -> Network:
    variables = [Variable(f"v{i:02d}", ("a", "b")) for i in range(n)]
    nodes = [Node(variables[0], (), ConditionalTable(((0.3, 0.7),)))]
    for i in range(1, n):
        nodes.append(
            Node(
                variables[i],
                (variables[i - 1].name,),
                ConditionalTable(((0.8, 0.2), (0.35, 0.65))),
            )
        )
    return Network(variables, nodes)


def bench(n: int, repeat: int) -> dict[str, float]:
    net = chain_network(n)
    evidence = EvidenceSet(virtual=tuple(
        VirtualFinding(f"v{i:02d}", {"a": 1.0, "b": 2.5}) for i in range(0, n, 3)
    ))
    weights = _weight_vectors(net, evidence)
    query = (0, n // 2, n - 1)

    timings: dict[str, float] = {}
    backends = ["python"] + (["c"] if kernel._ckernel is not None else [])
    reference = None
    for backend in backends:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = kernel.weighted_marginal(net, weights, query, backend=backend)
            best = min(best, time.perf_counter() - t0)
        if reference is None:
            reference = out
        elif out != reference:
            raise AssertionError(f"backend '{backend}' diverged from the reference")
        timings[backend] = best
    return timings


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="10,12,14,16,18")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if kernel._ckernel is None:
        print("note: compiled kernel unavailable; timing the fallback only\n")
    print(f"{'vars':>5} {'cells':>10} {'python':>12} {'c':>12} {'speedup':>9}")
    for n in sizes:
        t = bench(n, args.repeat)
        py = t["python"]
        if "c" in t:
            print(f"{n:>5} {2**n:>10} {py*1e3:>10.2f}ms {t['c']*1e3:>10.2f}ms "
                  f"{py/t['c']:>8.1f}x")
        else:
            print(f"{n:>5} {2**n:>10} {py*1e3:>10.2f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
