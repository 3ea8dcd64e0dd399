"""Exact posterior computation by enumeration under hard and virtual evidence.

Evidence comes in two forms.  A hard finding pins a variable to one observed
state.  A virtual finding attaches a likelihood vector to a variable: the
scale-free weights a noisy report contributes per state (a "4:1 in favor of
wet" weather report is ``{"dry": 1, "wet": 4}``).  Internally both become
per-state multiplicative weights, a hard finding being the 0/1 vector of its
observed state, which makes the two provably interchangeable.

Evidence documents are UTF-8 JSON::

    {
      "hard":    [{"var": "NoCall", "state": "no-call"}],
      "virtual": [{"var": "Field", "likelihood": {"dry": 1, "wet": 4}}]
    }

States missing from a likelihood map get weight 0.  A variable may carry
several virtual findings (their weights multiply) but at most one hard
finding, and never both kinds at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from . import kernel
from .errors import (
    EvidenceError,
    ImpossibleEvidenceError,
    NetworkFormatError,
    QueryError,
    ZeroMassConditionError,
)
from .model import Network, _full_state_indices


@dataclass(frozen=True)
class HardFinding:
    """A variable observed in a definite state."""

    variable: str
    state: str


@dataclass(frozen=True)
class VirtualFinding:
    """A scale-free likelihood vector over a variable's states.

    Rescaling the vector by any positive constant leaves every posterior
    unchanged.
    """

    variable: str
    likelihood: Mapping[str, float]

    def __post_init__(self):
        lik = {k: float(v) for k, v in self.likelihood.items()}
        object.__setattr__(self, "likelihood", lik)
        if any(w < 0.0 for w in lik.values()):
            raise EvidenceError(
                f"virtual finding on '{self.variable}' has a negative weight"
            )
        if not any(w > 0.0 for w in lik.values()):
            raise EvidenceError(
                f"virtual finding on '{self.variable}' has no positive weight"
            )


@dataclass(frozen=True)
class EvidenceSet:
    """All findings obtained so far."""

    hard: tuple[HardFinding, ...] = ()
    virtual: tuple[VirtualFinding, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "hard", tuple(self.hard))
        object.__setattr__(self, "virtual", tuple(self.virtual))
        seen = set()
        for f in self.hard:
            if f.variable in seen:
                raise EvidenceError(f"two hard findings on variable '{f.variable}'")
            seen.add(f.variable)
        for f in self.virtual:
            if f.variable in seen:
                raise EvidenceError(
                    f"variable '{f.variable}' carries both a hard and a virtual "
                    "finding; drop one (they are ambiguous together)"
                )

    @property
    def empty(self) -> bool:
        return not self.hard and not self.virtual

    def hard_variables(self) -> set[str]:
        return {f.variable for f in self.hard}


@dataclass(frozen=True)
class StateDistribution:
    """Normalized probability masses over (joint) state combinations."""

    variables: tuple[str, ...]
    masses: Mapping[tuple[str, ...], float]

    def __getitem__(self, key) -> float:
        if isinstance(key, str):
            key = (key,)
        return self.masses[tuple(key)]

    def items(self):
        return self.masses.items()


# -- evidence compilation ---------------------------------------------------------


def _weight_vectors(net: Network, e: EvidenceSet) -> list[list[float] | None]:
    """Per-variable multiplicative state weights implied by the evidence."""
    weights: list[list[float] | None] = [None] * len(net)
    for f in e.hard:
        i = net.index(f.variable)
        si = net.state_index(f.variable, f.state)
        vec = [0.0] * net.variables[i].arity
        vec[si] = 1.0
        weights[i] = vec
    for f in e.virtual:
        i = net.index(f.variable)
        v = net.variables[i]
        for state in f.likelihood:
            net.state_index(f.variable, state)
        vec = weights[i]
        if vec is None:
            vec = [1.0] * v.arity
        weights[i] = [
            w * f.likelihood.get(s, 0.0) for w, s in zip(vec, v.states)
        ]
    return weights


def _marginal(
    net: Network, e: EvidenceSet, query: Sequence[int]
) -> tuple[list[float], float]:
    return kernel.weighted_marginal(net, _weight_vectors(net, e), tuple(query))


# -- operations -------------------------------------------------------------------


def evidence_weight(net: Network, assignment: Mapping[str, str], e: EvidenceSet) -> float:
    """Unnormalized mass of a full assignment under the evidence.

    Zero if the assignment contradicts a hard finding; otherwise the joint
    probability times the product of virtual likelihood weights.  Factor
    order matches ``joint_probability`` (ascending variable name).
    """
    states = _full_state_indices(net, assignment)
    weights = _weight_vectors(net, e)
    comp = kernel.compiled(net)
    w = 1.0
    for i in comp.name_order:
        row = 0
        for p in comp.parents[i]:
            row = row * comp.cards[p] + states[p]
        w = w * comp.cpts[i][row * comp.cards[i] + states[i]]
    for i in comp.name_order:
        if weights[i] is not None:
            w = w * weights[i][states[i]]
    return w


def probability_of_evidence(net: Network, e: EvidenceSet) -> float:
    """Total evidence-weighted mass, summed over all full assignments.

    Meaningful only up to the scale of the virtual likelihood vectors; it is
    a true probability only when all virtual weights are bounded by 1 (for
    example when the evidence is empty or purely hard).
    """
    _, total = _marginal(net, e, ())
    return total


def posterior_joint(
    net: Network, e: EvidenceSet, variables: Sequence[str]
) -> StateDistribution:
    """Joint posterior over combinations of ``variables`` given the evidence."""
    names = tuple(variables)
    if not names:
        raise QueryError("posterior_joint needs at least one variable")
    if len(set(names)) != len(names):
        raise QueryError("posterior_joint variables must be distinct")
    idx = [net.index(n) for n in names]
    sums, total = _marginal(net, e, idx)
    if total <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability zero")
    combos = product(*[net.variables[i].states for i in idx])
    return StateDistribution(names, {c: s / total for c, s in zip(combos, sums)})


def posterior(net: Network, e: EvidenceSet, variable: str) -> StateDistribution:
    """Posterior of a single variable given the evidence."""
    return posterior_joint(net, e, (variable,))


def conditional_belief(
    net: Network,
    e: EvidenceSet,
    target: str,
    target_state: str,
    given: Mapping[str, str],
) -> float:
    """BEL(target = target_state | given, evidence).

    ``given`` is a partial assignment not binding the target; conditioning on
    a combination with zero posterior mass is an error.
    """
    ti = net.index(target)
    ts = net.state_index(target, target_state)
    if target in given:
        raise QueryError(f"conditioning assignment binds the target '{target}'")
    given_idx = sorted(net.index(n) for n in given)
    for n in given:
        net.state_index(n, given[n])

    sums, total = _marginal(net, e, [*given_idx, ti])
    if total <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability zero")
    tcard = net.variables[ti].arity
    g = 0
    for i in given_idx:
        g = g * net.variables[i].arity + net.state_index(
            net.variables[i].name, given[net.variables[i].name]
        )
    row = sums[g * tcard:(g + 1) * tcard]
    row_total = 0.0
    for w in row:
        row_total += w
    if row_total <= 0.0:
        raise ZeroMassConditionError(
            "conditioning combination has zero posterior probability"
        )
    return row[ts] / row_total


# -- document loading --------------------------------------------------------------


def load_evidence(text: str) -> EvidenceSet:
    """Parse a JSON evidence document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"invalid JSON: {exc}") from None
    return evidence_from_dict(doc)


def load_evidence_file(path) -> EvidenceSet:
    with open(path, "r", encoding="utf-8") as fh:
        return load_evidence(fh.read())


def evidence_from_dict(doc) -> EvidenceSet:
    """Build an EvidenceSet from an already-parsed document."""
    if not isinstance(doc, dict):
        raise EvidenceError("evidence document must be a JSON object")
    hard = []
    for i, rf in enumerate(doc.get("hard", [])):
        if not isinstance(rf, dict) or "var" not in rf or "state" not in rf:
            raise EvidenceError(f"hard[{i}] must be an object with 'var' and 'state'")
        hard.append(HardFinding(rf["var"], rf["state"]))
    virtual = []
    for i, rf in enumerate(doc.get("virtual", [])):
        if not isinstance(rf, dict) or "var" not in rf or "likelihood" not in rf:
            raise EvidenceError(
                f"virtual[{i}] must be an object with 'var' and 'likelihood'"
            )
        if not isinstance(rf["likelihood"], dict):
            raise EvidenceError(f"virtual[{i}] 'likelihood' must be a state->weight map")
        virtual.append(VirtualFinding(rf["var"], rf["likelihood"]))
    return EvidenceSet(tuple(hard), tuple(virtual))
