"""Shared test machinery: the independent full-joint oracle and random fixtures.

The oracle deliberately avoids the engine's enumeration kernel: it
materializes the complete joint table cell by cell via joint_probability,
applies evidence weights itself, and marginalizes with math.fsum.  Agreement
between the two paths is therefore meaningful.
"""

from __future__ import annotations

import math
import random
from itertools import product

from credence import (
    ConditionalTable,
    EvidenceSet,
    HardFinding,
    Network,
    Node,
    Variable,
    VirtualFinding,
    joint_probability,
)


# -- independent oracle ------------------------------------------------------------


def oracle_weighted_table(net: Network, e: EvidenceSet) -> dict[tuple[str, ...], float]:
    """Full evidence-weighted joint table, keyed by state combinations."""
    hard = {f.variable: f.state for f in e.hard}
    names = [v.name for v in net.variables]
    table = {}
    for combo in product(*[v.states for v in net.variables]):
        assignment = dict(zip(names, combo))
        w = joint_probability(net, assignment)
        for var, state in hard.items():
            if assignment[var] != state:
                w = 0.0
        for f in e.virtual:
            w *= f.likelihood.get(assignment[f.variable], 0.0)
        table[combo] = w
    return table


def oracle_posterior_joint(
    net: Network, e: EvidenceSet, variables: list[str]
) -> dict[tuple[str, ...], float]:
    """Marginalize the weighted table onto ``variables`` and normalize (fsum)."""
    table = oracle_weighted_table(net, e)
    names = [v.name for v in net.variables]
    idx = [names.index(n) for n in variables]
    groups: dict[tuple[str, ...], list[float]] = {}
    for combo, w in table.items():
        groups.setdefault(tuple(combo[i] for i in idx), []).append(w)
    total = math.fsum(table.values())
    keys = product(*[net.variable(n).states for n in variables])
    return {k: math.fsum(groups.get(k, [0.0])) / total for k in keys}


def oracle_posterior(net: Network, e: EvidenceSet, variable: str) -> dict[str, float]:
    joint = oracle_posterior_joint(net, e, [variable])
    return {k[0]: v for k, v in joint.items()}


def oracle_probability_of_evidence(net: Network, e: EvidenceSet) -> float:
    return math.fsum(oracle_weighted_table(net, e).values())


# -- random fixtures ----------------------------------------------------------------


def random_network(rng: random.Random, max_vars: int = 8, max_states: int = 3) -> Network:
    """A random DAG with well-separated CPT entries (no near-zero masses)."""
    n = rng.randint(2, max_vars)
    labels = [f"n{i}" for i in range(n)]
    rng.shuffle(labels)  # decorrelate name order from declaration order
    variables = []
    for name in labels:
        arity = rng.randint(2, max_states)
        variables.append(Variable(name, tuple(f"s{j}" for j in range(arity))))

    nodes = []
    for i, v in enumerate(variables):
        k = rng.randint(0, min(i, 3))
        parent_idx = sorted(rng.sample(range(i), k))
        parents = tuple(variables[j].name for j in parent_idx)
        n_rows = 1
        for j in parent_idx:
            n_rows *= variables[j].arity
        rows = []
        for _ in range(n_rows):
            raw = [rng.uniform(0.2, 1.0) for _ in range(v.arity)]
            s = sum(raw)
            rows.append(tuple(x / s for x in raw))
        nodes.append(Node(v, parents, ConditionalTable(tuple(rows))))
    return Network(variables, nodes)


def random_evidence(rng: random.Random, net: Network) -> EvidenceSet:
    """Random hard/virtual findings; guaranteed satisfiable."""
    hard = []
    virtual = []
    for v in net.variables:
        roll = rng.random()
        if roll < 0.15:
            hard.append(HardFinding(v.name, rng.choice(v.states)))
        elif roll < 0.40:
            weights = {s: rng.uniform(0.1, 3.0) for s in v.states}
            if rng.random() < 0.25:
                # knock one state out entirely, like a definite report
                weights[rng.choice(v.states[1:])] = 0.0
            virtual.append(VirtualFinding(v.name, weights))
    return EvidenceSet(tuple(hard), tuple(virtual))


def random_target(rng: random.Random, net: Network, e: EvidenceSet) -> tuple[str, str]:
    v = rng.choice(net.variables)
    return v.name, rng.choice(v.states)


def add_leaf_child(
    net: Network, parent: str, name: str, rng: random.Random
) -> Network:
    """Return a copy of ``net`` with an unobserved binary child of ``parent``."""
    child = Variable(name, ("yes", "no"))
    n_rows = net.variable(parent).arity
    rows = []
    for _ in range(n_rows):
        p = rng.uniform(0.1, 0.9)
        rows.append((p, 1.0 - p))
    node = Node(child, (parent,), ConditionalTable(tuple(rows)))
    return Network([*net.variables, child], [*net.nodes, node], max_variables=None)
