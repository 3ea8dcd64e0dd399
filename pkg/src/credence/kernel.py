"""Kernel selection and the network -> array compilation layer.

The enumeration kernel exists twice: a Cython extension (credence._ckernel)
for speed and a pure-Python fallback (credence._kernel_py).  Both implement
the same deterministic operation order and return bit-identical doubles;
``benchmarks/bench_kernels.py`` compares their throughput.

Selection happens at import: the compiled kernel is used when present unless
the CREDENCE_PURE_PYTHON environment variable is set to a non-empty value
other than "0".  Individual calls may force a backend explicitly.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernel_py
from .model import Network

try:
    from . import _ckernel
except ImportError:
    _ckernel = None

_FORCE_PY = os.environ.get("CREDENCE_PURE_PYTHON", "") not in ("", "0")

#: Name of the backend used by default: "c" or "python".
BACKEND: str = "c" if (_ckernel is not None and not _FORCE_PY) else "python"


class CompiledNetwork:
    """Array form of a network, shared by both kernel backends."""

    __slots__ = (
        "cards", "name_order", "parents", "cpts",
        "np_cards", "np_name_order", "np_par_flat", "np_par_off",
        "np_par_len", "np_cpt_flat", "np_cpt_off",
    )

    def __init__(self, net: Network):
        n = len(net)
        self.cards = [v.arity for v in net.variables]
        names = [v.name for v in net.variables]
        self.name_order = sorted(range(n), key=lambda i: names[i])
        self.parents = [tuple(net.index(p) for p in nd.parents) for nd in net.nodes]
        self.cpts = [[p for row in nd.cpt.rows for p in row] for nd in net.nodes]

        self.np_cards = np.asarray(self.cards, dtype=np.int32)
        self.np_name_order = np.asarray(self.name_order, dtype=np.int32)
        par_flat: list[int] = []
        par_off = []
        for ps in self.parents:
            par_off.append(len(par_flat))
            par_flat.extend(ps)
        self.np_par_flat = np.asarray(par_flat, dtype=np.int32)
        self.np_par_off = np.asarray(par_off, dtype=np.int64)
        self.np_par_len = np.asarray([len(ps) for ps in self.parents], dtype=np.int32)
        cpt_flat: list[float] = []
        cpt_off = []
        for table in self.cpts:
            cpt_off.append(len(cpt_flat))
            cpt_flat.extend(table)
        self.np_cpt_flat = np.asarray(cpt_flat, dtype=np.float64)
        self.np_cpt_off = np.asarray(cpt_off, dtype=np.int64)


def compiled(net: Network) -> CompiledNetwork:
    """Cached array form of ``net`` (networks are immutable, so this is safe)."""
    cache = net._kernel_cache
    if cache is None:
        cache = CompiledNetwork(net)
        net._kernel_cache = cache
    return cache


def weighted_marginal(
    net: Network,
    weights: list[list[float] | None],
    query: tuple[int, ...],
    backend: str | None = None,
) -> tuple[list[float], float]:
    """Group evidence-weighted joint mass by the (declaration-index) query variables.

    ``weights[i]`` is an optional per-state multiplicative evidence factor for
    variable i.  Returns (sums, total) where ``sums`` is indexed with the
    first query variable varying slowest.
    """
    comp = compiled(net)
    use = backend or BACKEND
    if use == "c":
        if _ckernel is None:
            raise RuntimeError("compiled kernel requested but not available")
        size = 1
        for q in query:
            size *= comp.cards[q]
        wt_flat = np.zeros(sum(comp.cards), dtype=np.float64)
        wt_off = np.zeros(len(comp.cards), dtype=np.int64)
        has_wt = np.zeros(len(comp.cards), dtype=np.uint8)
        off = 0
        for i, card in enumerate(comp.cards):
            wt_off[i] = off
            if weights[i] is not None:
                has_wt[i] = 1
                wt_flat[off:off + card] = weights[i]
            off += card
        out = np.zeros(size, dtype=np.float64)
        total = _ckernel.weighted_marginal(
            comp.np_cards, comp.np_name_order,
            comp.np_par_flat, comp.np_par_off, comp.np_par_len,
            comp.np_cpt_flat, comp.np_cpt_off,
            wt_flat, wt_off, has_wt,
            np.asarray(query, dtype=np.int32), out,
        )
        return out.tolist(), total
    if use == "python":
        return _kernel_py.weighted_marginal(
            comp.cards, comp.name_order, comp.parents, comp.cpts, weights, query
        )
    raise ValueError(f"unknown kernel backend '{use}'")
