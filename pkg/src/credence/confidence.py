"""Confidence measures induced by the network itself.

The confidence in a belief BEL(target) is read off the distribution of
BEL(target | c) as c ranges over the combinations of a contingency set C:
the variables whose unresolved fluctuations make the belief feel unsure.
Structurally, C contains the direct parents of the target plus the direct
parents of every evidence-bearing node (for a virtual finding the implicit
observation's only parent is the reported variable itself), minus the
target, the target's descendants and all hard-observed variables.

Each combination contributes a point (BEL(target|c), BEL(c)); zero-mass
combinations are pruned, points with equal values are merged, and the mass
left after pruning is renormalized.  The mean of the resulting distribution
always equals BEL(target); its standard deviation and range quantify how
settled that belief is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .errors import (
    EvidenceError,
    ImpossibleEvidenceError,
    InconsistentRefinementError,
    QueryError,
)
from .inference import (
    EvidenceSet,
    HardFinding,
    VirtualFinding,
    _marginal,
)
from .model import ConditionalTable, Network, Node, Variable, descendants

#: Combinations whose posterior mass does not exceed this are dropped.
PRUNE_TOLERANCE = 1e-12

#: Contributions whose belief values agree within this are merged into one point.
MERGE_TOLERANCE = 1e-9

#: Tolerance for the refinement mixture-consistency check.
MIXTURE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ContingencySet:
    """Ordered variable names whose fluctuations drive the confidence measure."""

    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return len(self.variables)


@dataclass(frozen=True)
class Contribution:
    """One contingency combination: its states, belief value and posterior mass."""

    states: tuple[str, ...]
    value: float
    mass: float


@dataclass(frozen=True)
class BeliefPoint:
    """A belief level with its aggregated mass and contributing combinations."""

    value: float
    mass: float
    combos: tuple[dict, ...]


@dataclass(frozen=True)
class BeliefDistribution:
    """Distribution of BEL(target|c) over the contingency combinations.

    ``points`` are sorted ascending by value with equal values merged;
    ``contributions`` keeps the per-combination view (combination order) for
    table rendering and audits.  ``coverage`` is 1.0 except for top-k
    truncations, where it reports the posterior mass retained.
    """

    target_variable: str
    target_state: str
    contingency: ContingencySet
    points: tuple[BeliefPoint, ...]
    contributions: tuple[Contribution, ...]
    coverage: float


@dataclass(frozen=True)
class ConfidenceSummary:
    """Mean, spread and range of a belief distribution."""

    mean: float
    std_dev: float
    value_range: tuple[float, float]
    support_size: int
    coverage: float


# -- contingency derivation ---------------------------------------------------------


def derive_contingency_set(net: Network, e: EvidenceSet, target: str) -> ContingencySet:
    """The structural contingency set for ``target`` under the evidence.

    Direct parents of the target and of every evidence-bearing node, minus
    the target itself, its descendants, and hard-observed variables.  A hard
    finding's bearing node is the observed variable (contributing its CPT
    parents); a virtual finding models an implicit observation child of the
    reported variable, so it contributes that variable itself.
    """
    candidates = set(net.node(target).parents)
    for f in e.hard:
        candidates |= set(net.node(f.variable).parents)
    for f in e.virtual:
        net.index(f.variable)
        candidates.add(f.variable)
    candidates.discard(target)
    candidates -= descendants(net, target)
    candidates -= e.hard_variables()
    return ContingencySet(tuple(sorted(candidates, key=net.index)))


def _check_contingency(
    net: Network, e: EvidenceSet, target: str, cset: ContingencySet
) -> list[int]:
    """Validate a (possibly caller-supplied) contingency set; return indices."""
    idx = []
    seen = set()
    down = descendants(net, target)
    hard = e.hard_variables()
    for name in cset.variables:
        i = net.index(name)
        if name == target:
            raise QueryError(f"contingency set may not contain the target '{target}'")
        if name in down:
            raise QueryError(
                f"contingency set may not contain '{name}', a descendant of the target"
            )
        if name in hard:
            raise QueryError(
                f"contingency set may not contain hard-observed variable '{name}'"
            )
        if name in seen:
            raise QueryError(f"contingency set lists '{name}' twice")
        seen.add(name)
        idx.append(i)
    return idx


# -- belief distributions -----------------------------------------------------------


def belief_distribution(
    net: Network,
    e: EvidenceSet,
    target: str,
    target_state: str,
    contingency: ContingencySet | None = None,
) -> BeliefDistribution:
    """Distribution of BEL(target=target_state | c) weighted by BEL(c | evidence)."""
    contribs, cset = _raw_contributions(net, e, target, target_state, contingency)
    return _build(net, target, target_state, cset, contribs, selected=None)


def top_k_distribution(
    net: Network,
    e: EvidenceSet,
    target: str,
    target_state: str,
    contingency: ContingencySet | None = None,
    k: int = 3,
) -> BeliefDistribution:
    """Belief distribution restricted to the k most likely combinations.

    Ties are broken lexicographically by state indices (the combination
    enumeration order).  ``coverage`` reports the posterior mass retained
    before renormalization; at k >= support the result equals the exact
    distribution.
    """
    if not isinstance(k, int) or k < 1:
        raise QueryError(f"top-k count must be a positive integer, got {k!r}")
    contribs, cset = _raw_contributions(net, e, target, target_state, contingency)
    if k >= len(contribs):
        return _build(net, target, target_state, cset, contribs, selected=None)
    ranking = sorted(range(len(contribs)), key=lambda i: -contribs[i][2])
    return _build(net, target, target_state, cset, contribs, selected=ranking[:k])


def _raw_contributions(
    net: Network,
    e: EvidenceSet,
    target: str,
    target_state: str,
    contingency: ContingencySet | None,
) -> tuple[list[tuple[tuple[str, ...], float, float]], ContingencySet]:
    """Pruned (states, value, group weight) triples in combination order."""
    ti = net.index(target)
    ts = net.state_index(target, target_state)
    cset = contingency if contingency is not None else derive_contingency_set(net, e, target)
    idx = _check_contingency(net, e, target, cset)

    sums, total = _marginal(net, e, [*idx, ti])
    if total <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability zero")

    tcard = net.variables[ti].arity
    contribs = []
    for ci, combo in enumerate(product(*[net.variables[i].states for i in idx])):
        row = sums[ci * tcard:(ci + 1) * tcard]
        gweight = 0.0
        for w in row:
            gweight += w
        if gweight / total > PRUNE_TOLERANCE:
            contribs.append((combo, row[ts] / gweight, gweight))
    return contribs, cset


def _build(
    net: Network,
    target: str,
    target_state: str,
    cset: ContingencySet,
    contribs: list[tuple[tuple[str, ...], float, float]],
    selected: list[int] | None,
) -> BeliefDistribution:
    retained_weight = 0.0
    for _, _, g in contribs:
        retained_weight += g

    if selected is None:
        kept = list(range(len(contribs)))
        coverage = 1.0
    else:
        # Coverage accumulates in descending-mass order so it is bitwise
        # nondecreasing in k.
        coverage = 0.0
        for i in selected:
            coverage += contribs[i][2] / retained_weight
        kept = sorted(selected)

    contributions = []
    for i in kept:
        states, value, gweight = contribs[i]
        mass = gweight / retained_weight
        if selected is not None:
            mass = mass / coverage
        contributions.append(Contribution(states, value, mass))

    points = _merge_points(cset, contributions)
    return BeliefDistribution(
        target_variable=target,
        target_state=target_state,
        contingency=cset,
        points=tuple(points),
        contributions=tuple(contributions),
        coverage=coverage,
    )


def _merge_points(
    cset: ContingencySet, contributions: list[Contribution]
) -> list[BeliefPoint]:
    """Sort by value and merge contributions whose values agree within tolerance."""
    ordered = sorted(contributions, key=lambda c: c.value)
    points: list[BeliefPoint] = []
    group: list[Contribution] = []
    for c in ordered:
        if group and c.value - group[0].value > MERGE_TOLERANCE:
            points.append(_point(cset, group))
            group = []
        group.append(c)
    if group:
        points.append(_point(cset, group))
    return points


def _point(cset: ContingencySet, group: list[Contribution]) -> BeliefPoint:
    mass = 0.0
    for c in group:
        mass += c.mass
    combos = tuple(dict(zip(cset.variables, c.states)) for c in group)
    return BeliefPoint(value=group[0].value, mass=mass, combos=combos)


# -- summaries ----------------------------------------------------------------------


def summarize(d: BeliefDistribution) -> ConfidenceSummary:
    """Mean, standard deviation, range and support of a belief distribution.

    The mean always reproduces BEL(target): averaging the conditional
    beliefs over the contingencies collapses the two-level view back to the
    plain posterior.
    """
    mean = 0.0
    for p in d.points:
        mean += p.value * p.mass
    var = 0.0
    for p in d.points:
        var += (p.value - mean) ** 2 * p.mass
    return ConfidenceSummary(
        mean=mean,
        std_dev=math.sqrt(var),
        value_range=(d.points[0].value, d.points[-1].value),
        support_size=len(d.points),
        coverage=d.coverage,
    )


# -- contingency refinement ----------------------------------------------------------


def refine_virtual_finding(
    net: Network,
    e: EvidenceSet,
    finding: VirtualFinding,
    new_variable: Variable,
    prior: Sequence[float],
    branch_likelihoods: Mapping[str, Mapping[str, float]],
    *,
    enforce_consistency: bool = True,
) -> tuple[Network, EvidenceSet]:
    """Split a virtual finding into branch likelihoods under a new contingency.

    The finding on X is replaced by an explicit observation node with parents
    (X, new_variable) and a hard-observed state; ``branch_likelihoods`` maps
    each state of ``new_variable`` to the likelihood vector over X's states
    that holds under that branch.  The prior-weighted average of the branch
    vectors must stay proportional to the original likelihood (within
    ``MIXTURE_TOLERANCE``) so the refined model preserves every posterior;
    pass ``enforce_consistency=False`` to deliberately change the spread.

    Returns a new (network, evidence) pair; the inputs are untouched.
    """
    if finding not in e.virtual:
        raise EvidenceError(
            f"no matching virtual finding on '{finding.variable}' in the evidence set"
        )
    if new_variable.name in {v.name for v in net.variables}:
        raise QueryError(f"variable '{new_variable.name}' already exists")

    x = net.variable(finding.variable)
    prior = [float(p) for p in prior]
    if len(prior) != new_variable.arity:
        raise QueryError(
            f"prior for '{new_variable.name}' needs {new_variable.arity} entries, "
            f"got {len(prior)}"
        )
    branches = {}
    for u in new_variable.states:
        if u not in branch_likelihoods:
            raise QueryError(f"missing branch likelihood for state '{u}'")
        vec = {k: float(v) for k, v in branch_likelihoods[u].items()}
        for s in vec:
            if s not in x.states:
                raise QueryError(f"branch for '{u}' references unknown state '{s}'")
        if any(w < 0.0 for w in vec.values()) or not any(w > 0.0 for w in vec.values()):
            raise EvidenceError(f"branch likelihood for '{u}' is not a valid weight vector")
        branches[u] = [vec.get(s, 0.0) for s in x.states]

    if enforce_consistency:
        _check_mixture(x, finding, new_variable, prior, branches)

    obs_name = _fresh_name(net, f"{x.name}_obs")
    obs_var = Variable(obs_name, ("observed", "not-observed"))
    scale = 1.0 / max(max(vec) for vec in branches.values())
    rows = []
    for xi in range(x.arity):
        for u in new_variable.states:
            p = branches[u][xi] * scale
            rows.append((p, 1.0 - p))

    new_net = Network(
        [*net.variables, new_variable, obs_var],
        [
            *net.nodes,
            Node(new_variable, (), ConditionalTable((tuple(prior),))),
            Node(obs_var, (x.name, new_variable.name), ConditionalTable(tuple(rows))),
        ],
        max_variables=None,
    )
    virtual = list(e.virtual)
    virtual.remove(finding)
    new_e = EvidenceSet(
        hard=(*e.hard, HardFinding(obs_name, "observed")),
        virtual=tuple(virtual),
    )
    return new_net, new_e


def _check_mixture(x, finding, new_variable, prior, branches):
    mixture = [0.0] * x.arity
    for ui, u in enumerate(new_variable.states):
        for xi in range(x.arity):
            mixture[xi] += prior[ui] * branches[u][xi]
    original = [finding.likelihood.get(s, 0.0) for s in x.states]
    mix_sum = sum(mixture)
    orig_sum = sum(original)
    if mix_sum <= 0.0:
        raise InconsistentRefinementError("branch mixture has zero total weight")
    for xi, s in enumerate(x.states):
        if abs(mixture[xi] / mix_sum - original[xi] / orig_sum) > MIXTURE_TOLERANCE:
            raise InconsistentRefinementError(
                f"prior-weighted branch likelihoods are not proportional to the "
                f"original finding (state '{s}' mismatch); pass "
                f"enforce_consistency=False to accept a changed spread"
            )


def _fresh_name(net: Network, base: str) -> str:
    taken = {v.name for v in net.variables}
    if base not in taken:
        return base
    n = 2
    while f"{base}{n}" in taken:
        n += 1
    return f"{base}{n}"
