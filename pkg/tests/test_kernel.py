"""Kernel backends: bit-for-bit parity, selection, determinism."""

from __future__ import annotations

import random

import pytest

import credence
from credence import EvidenceSet, kernel
from credence.inference import _weight_vectors

from support import random_evidence, random_network

needs_ext = pytest.mark.skipif(
    kernel._ckernel is None, reason="compiled kernel not built"
)


def both_backends(net, e, query):
    w = _weight_vectors(net, e)
    c = kernel.weighted_marginal(net, w, query, backend="c")
    py = kernel.weighted_marginal(net, w, query, backend="python")
    return c, py


@needs_ext
def test_backends_agree_bitwise_on_fixtures(football, nocall_evidence, coins):
    cases = [
        (football, EvidenceSet(), (0, 1, 2, 3)),
        (football, nocall_evidence, (0, 1, 2, 3)),
        (football, nocall_evidence, ()),
        (football, nocall_evidence, (3,)),
        (coins, EvidenceSet(), (0, 1)),
    ]
    for net, e, query in cases:
        (cs, ct), (ps, pt) = both_backends(net, e, query)
        assert ct == pt
        assert cs == ps


@needs_ext
def test_backends_agree_bitwise_on_random_networks():
    rng = random.Random(1234)
    for _ in range(40):
        net = random_network(rng, max_vars=7)
        e = random_evidence(rng, net)
        names = [v.name for v in net.variables]
        q = tuple(
            names.index(n) for n in rng.sample(names, k=rng.randint(0, len(names)))
        )
        (cs, ct), (ps, pt) = both_backends(net, e, q)
        assert ct == pt
        assert cs == ps


def test_python_backend_always_available(football, no_evidence):
    w = _weight_vectors(football, no_evidence)
    sums, total = kernel.weighted_marginal(football, w, (3,), backend="python")
    assert total == pytest.approx(1.0, abs=1e-9)
    assert sums[0] / total == pytest.approx(0.53, abs=1e-9)


def test_unknown_backend_rejected(football, no_evidence):
    w = _weight_vectors(football, no_evidence)
    with pytest.raises(ValueError, match="unknown kernel backend"):
        kernel.weighted_marginal(football, w, (), backend="rust")


def test_empty_query_total_matches_grouped_sum(football, nocall_evidence):
    w = _weight_vectors(football, nocall_evidence)
    sums, total = kernel.weighted_marginal(football, w, ())
    assert len(sums) == 1
    assert sums[0] == total


def test_repeated_calls_are_bit_identical(football, nocall_evidence):
    w = _weight_vectors(football, nocall_evidence)
    runs = {tuple(kernel.weighted_marginal(football, w, (0, 1, 2, 3))[0]) for _ in range(3)}
    assert len(runs) == 1


def test_backend_constant_is_valid():
    assert kernel.BACKEND in ("c", "python")
