"""Pure-Python enumeration kernel.

Reference implementation of the weighted-marginal primitive.  The compiled
kernel (credence._ckernel) performs the identical sequence of IEEE-754
operations, so the two backends agree bit-for-bit:

* assignments are enumerated with the first declared variable varying
  slowest (row-major odometer order);
* per assignment, CPT factors are multiplied in ascending variable-name
  order, then evidence weights in the same order;
* the running total and the per-group sums accumulate in enumeration order.
"""

from __future__ import annotations

from itertools import product


def weighted_marginal(
    cards: list[int],
    name_order: list[int],
    parents: list[tuple[int, ...]],
    cpts: list[list[float]],
    weights: list[list[float] | None],
    query: tuple[int, ...],
) -> tuple[list[float], float]:
    """Sum evidence-weighted joint mass onto combinations of the query variables.

    ``cpts[i]`` is node i's table flattened row-major (row * cards[i] + state).
    Returns (group sums indexed with the first query variable slowest, total).
    """
    size = 1
    for q in query:
        size *= cards[q]
    sums = [0.0] * size
    total = 0.0
    weighted = [i for i in name_order if weights[i] is not None]

    for s in product(*[range(c) for c in cards]):
        w = 1.0
        for i in name_order:
            row = 0
            for p in parents[i]:
                row = row * cards[p] + s[p]
            w = w * cpts[i][row * cards[i] + s[i]]
        for i in weighted:
            w = w * weights[i][s[i]]
        total += w
        g = 0
        for q in query:
            g = g * cards[q] + s[q]
        sums[g] += w
    return sums, total
