"""Replay ordered evidence narratives, snapshotting belief and confidence.

A scenario names a network, a target (variable + state) and an ordered list
of steps.  Steps accumulate: each one extends the working evidence (or, for
refinements, rewrites the working network copy), after which the contingency
set, belief distribution, summary and target posterior are recomputed and
recorded.  The report always starts with a step-0 snapshot of the evidence-
free model.

Scenario documents are UTF-8 JSON::

    {
      "network": "football.json",            // path (relative to the scenario
                                              // file) or an inline network object
      "target": {"var": "Win", "state": "win"},
      "steps": [
        {"kind": "observe-virtual",
         "findings": [{"var": "Field", "likelihood": {"dry": 1, "wet": 4}}]},
        {"kind": "observe-hard", "var": "NoCall", "state": "no-call"},
        {"kind": "refine", "var": "Win",
         "new_var": {"name": "WrongNumber", "states": ["wrong", "right"],
                     "prior": [0.25, 0.75]},
         "likelihoods": {"wrong": {"win": 1, "lose": 1},
                         "right": {"win": 0.3333333333333333,
                                   "lose": 1.6666666666666667}}},
        {"kind": "query-topk", "k": 3}
      ]
    }

Observe steps take either a single ``var``/``state`` (or ``likelihood``)
pair or a ``findings`` list, so one narrative step can deliver several
reports at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .confidence import (
    BeliefDistribution,
    ConfidenceSummary,
    ContingencySet,
    belief_distribution,
    derive_contingency_set,
    refine_virtual_finding,
    summarize,
    top_k_distribution,
)
from .errors import CredenceError, ScenarioError, ScenarioStepError
from .inference import (
    EvidenceSet,
    HardFinding,
    StateDistribution,
    VirtualFinding,
    posterior,
)
from .model import (
    DEFAULT_MAX_VARIABLES,
    Network,
    Variable,
    load_network_file,
    network_from_dict,
)


@dataclass(frozen=True)
class HardStep:
    findings: tuple[HardFinding, ...]
    kind = "observe-hard"


@dataclass(frozen=True)
class VirtualStep:
    findings: tuple[VirtualFinding, ...]
    kind = "observe-virtual"


@dataclass(frozen=True)
class RefineStep:
    variable: str
    new_variable: Variable
    prior: tuple[float, ...]
    branch_likelihoods: Mapping[str, Mapping[str, float]]
    enforce_consistency: bool = True
    kind = "refine"


@dataclass(frozen=True)
class TopKStep:
    k: int
    kind = "query-topk"


Step = Union[HardStep, VirtualStep, RefineStep, TopKStep]


@dataclass(frozen=True)
class Scenario:
    network: Network
    target_variable: str
    target_state: str
    steps: tuple[Step, ...]


@dataclass(frozen=True)
class Snapshot:
    """State after a step: step 0 is the evidence-free model."""

    step: int
    contingency: ContingencySet
    distribution: BeliefDistribution
    summary: ConfidenceSummary
    posterior: StateDistribution


@dataclass(frozen=True)
class ScenarioReport:
    target_variable: str
    target_state: str
    snapshots: tuple[Snapshot, ...]


def run_scenario(scenario: Scenario) -> ScenarioReport:
    """Apply the steps cumulatively, snapshotting after each one.

    Works on the scenario's network reference and a growing evidence set;
    refinement steps swap in a rewritten working copy, leaving the original
    network untouched, so runs are repeatable.
    """
    net = scenario.network
    evidence = EvidenceSet()
    scenario.network.state_index(scenario.target_variable, scenario.target_state)

    snapshots = [_snapshot(0, net, evidence, scenario, k=None)]
    for n, step in enumerate(scenario.steps, start=1):
        k = None
        try:
            if isinstance(step, HardStep):
                evidence = EvidenceSet(
                    hard=(*evidence.hard, *step.findings), virtual=evidence.virtual
                )
            elif isinstance(step, VirtualStep):
                evidence = EvidenceSet(
                    hard=evidence.hard, virtual=(*evidence.virtual, *step.findings)
                )
            elif isinstance(step, RefineStep):
                finding = _finding_on(evidence, step.variable)
                net, evidence = refine_virtual_finding(
                    net,
                    evidence,
                    finding,
                    step.new_variable,
                    step.prior,
                    step.branch_likelihoods,
                    enforce_consistency=step.enforce_consistency,
                )
            elif isinstance(step, TopKStep):
                k = step.k
            else:
                raise ScenarioError(f"unknown step type {type(step).__name__}")
            snapshots.append(_snapshot(n, net, evidence, scenario, k=k))
        except ScenarioStepError:
            raise
        except CredenceError as exc:
            raise ScenarioStepError(n, str(exc)) from exc
    return ScenarioReport(
        scenario.target_variable, scenario.target_state, tuple(snapshots)
    )


def _snapshot(n: int, net: Network, e: EvidenceSet, scenario: Scenario, k: int | None) -> Snapshot:
    tv, ts = scenario.target_variable, scenario.target_state
    cset = derive_contingency_set(net, e, tv)
    if k is None:
        dist = belief_distribution(net, e, tv, ts, cset)
    else:
        dist = top_k_distribution(net, e, tv, ts, cset, k=k)
    return Snapshot(
        step=n,
        contingency=cset,
        distribution=dist,
        summary=summarize(dist),
        posterior=posterior(net, e, tv),
    )


def _finding_on(evidence: EvidenceSet, variable: str) -> VirtualFinding:
    matches = [f for f in evidence.virtual if f.variable == variable]
    if not matches:
        raise ScenarioError(f"no virtual finding on '{variable}' to refine")
    if len(matches) > 1:
        raise ScenarioError(
            f"variable '{variable}' carries {len(matches)} virtual findings; "
            "refinement needs exactly one"
        )
    return matches[0]


# -- document loading --------------------------------------------------------------


def load_scenario(
    text: str, base_dir=None, *, max_variables: int | None = DEFAULT_MAX_VARIABLES
) -> Scenario:
    """Parse a scenario document; relative network paths resolve against base_dir."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc}") from None
    return scenario_from_dict(doc, base_dir=base_dir, max_variables=max_variables)


def load_scenario_file(path, *, max_variables: int | None = DEFAULT_MAX_VARIABLES) -> Scenario:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        return load_scenario(fh.read(), base_dir=path.parent, max_variables=max_variables)


def scenario_from_dict(
    doc, base_dir=None, *, max_variables: int | None = DEFAULT_MAX_VARIABLES
) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    if "network" not in doc:
        raise ScenarioError("scenario document needs a 'network' entry")
    raw_net = doc["network"]
    if isinstance(raw_net, str):
        path = Path(raw_net)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        network = load_network_file(path, max_variables=max_variables)
    elif isinstance(raw_net, dict):
        network = network_from_dict(raw_net, max_variables=max_variables)
    else:
        raise ScenarioError("'network' must be a path or an inline network object")

    target = doc.get("target")
    if not isinstance(target, dict) or "var" not in target or "state" not in target:
        raise ScenarioError("'target' must be an object with 'var' and 'state'")

    steps = []
    for i, raw in enumerate(doc.get("steps", [])):
        steps.append(_parse_step(i, raw))
    return Scenario(network, target["var"], target["state"], tuple(steps))


def _parse_step(i: int, raw) -> Step:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ScenarioError(f"steps[{i}] must be an object with a 'kind'")
    kind = raw["kind"]
    if kind == "observe-hard":
        return HardStep(tuple(
            HardFinding(f["var"], f["state"]) for f in _finding_list(i, raw, ("var", "state"))
        ))
    if kind == "observe-virtual":
        return VirtualStep(tuple(
            VirtualFinding(f["var"], f["likelihood"])
            for f in _finding_list(i, raw, ("var", "likelihood"))
        ))
    if kind == "refine":
        for key in ("var", "new_var", "likelihoods"):
            if key not in raw:
                raise ScenarioError(f"steps[{i}] (refine) needs '{key}'")
        nv = raw["new_var"]
        if not isinstance(nv, dict) or not {"name", "states", "prior"} <= nv.keys():
            raise ScenarioError(
                f"steps[{i}] 'new_var' needs 'name', 'states' and 'prior'"
            )
        return RefineStep(
            variable=raw["var"],
            new_variable=Variable(nv["name"], tuple(nv["states"])),
            prior=tuple(float(p) for p in nv["prior"]),
            branch_likelihoods=raw["likelihoods"],
            enforce_consistency=bool(raw.get("enforce_consistency", True)),
        )
    if kind == "query-topk":
        if "k" not in raw or not isinstance(raw["k"], int):
            raise ScenarioError(f"steps[{i}] (query-topk) needs an integer 'k'")
        return TopKStep(raw["k"])
    raise ScenarioError(f"steps[{i}] has unknown kind '{kind}'")


def _finding_list(i: int, raw: dict, keys: tuple[str, str]) -> list[dict]:
    if "findings" in raw:
        items = raw["findings"]
        if not isinstance(items, list):
            raise ScenarioError(f"steps[{i}] 'findings' must be a list")
    else:
        items = [raw]
    out = []
    for item in items:
        if not isinstance(item, dict) or any(k not in item for k in keys):
            raise ScenarioError(
                f"steps[{i}] findings need {' and '.join(repr(k) for k in keys)}"
            )
        out.append(item)
    return out
