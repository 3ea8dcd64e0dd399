"""Causal-network data model: discrete variables, CPTs, validation, joint evaluation.

A network is a DAG of discrete variables.  Every variable owns a conditional
probability table (CPT) with one row per combination of its parents' states
(roots have a single prior row).  Rows are ordered lexicographically over
parent state indices with the first listed parent varying slowest, and each
row lists one probability per child state in declared state order.

Network documents are UTF-8 JSON::

    {
      "variables": [{"name": "Field", "states": ["dry", "wet"]}, ...],
      "nodes": [{"var": "Field", "parents": [], "cpt": [[0.7, 0.3]]}, ...]
    }

Determinism contract: ``joint_probability`` multiplies CPT factors in
ascending variable-name order, so results are bit-identical regardless of
which topological order a caller walks the network in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NetworkFormatError, NetworkValidationError, QueryError

#: CPT rows whose sum is within this tolerance of 1 are renormalized;
#: anything further off is rejected.
ROW_SUM_TOLERANCE = 1e-6

#: Soft cap on network size; exact enumeration beyond this is rejected
#: unless the caller raises the cap explicitly.
DEFAULT_MAX_VARIABLES = 24


@dataclass(frozen=True)
class Variable:
    """A discrete variable with at least two uniquely-labeled states."""

    name: str
    states: tuple[str, ...]

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise NetworkValidationError("variable name must be a nonempty string")
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) < 2:
            raise NetworkValidationError(
                f"variable '{self.name}' needs at least 2 states, got {len(self.states)}"
            )
        seen = set()
        for s in self.states:
            if not s or not isinstance(s, str):
                raise NetworkValidationError(
                    f"variable '{self.name}' has a non-string or empty state label"
                )
            if s in seen:
                raise NetworkValidationError(
                    f"variable '{self.name}' has duplicate state '{s}'"
                )
            seen.add(s)

    @property
    def arity(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class ConditionalTable:
    """CPT rows: one tuple of probabilities per parent-state combination."""

    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(float(p) for p in r) for r in self.rows))


@dataclass(frozen=True)
class Node:
    """A variable together with its parent list and CPT."""

    variable: Variable
    parents: tuple[str, ...]
    cpt: ConditionalTable

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))

    @property
    def name(self) -> str:
        return self.variable.name


class Network:
    """A validated, immutable causal network.

    Construction validates everything: unique names, known parents, no
    self-reference, acyclicity, CPT row counts/lengths, entries in [0, 1]
    and row sums within ``ROW_SUM_TOLERANCE`` of 1 (rows are renormalized,
    so stored CPTs always sum to exactly the float row total's quotient).

    Instances are immutable after construction and safe to share across
    threads; all operations on them are pure functions.
    """

    def __init__(
        self,
        variables: Iterable[Variable],
        nodes: Iterable[Node],
        *,
        max_variables: int | None = DEFAULT_MAX_VARIABLES,
    ):
        variables = tuple(variables)
        nodes = tuple(nodes)
        if not variables:
            raise NetworkValidationError("network declares no variables")
        if max_variables is not None and len(variables) > max_variables:
            raise NetworkValidationError(
                f"network has {len(variables)} variables; enumeration cap is "
                f"{max_variables} (raise max_variables to override)"
            )

        index: dict[str, int] = {}
        for v in variables:
            if v.name in index:
                raise NetworkValidationError(f"duplicate variable '{v.name}'")
            index[v.name] = len(index)

        by_var: dict[str, Node] = {}
        for nd in nodes:
            if nd.name not in index:
                raise NetworkValidationError(f"node for undeclared variable '{nd.name}'")
            if nd.name in by_var:
                raise NetworkValidationError(f"duplicate node for variable '{nd.name}'")
            by_var[nd.name] = nd
        missing = [v.name for v in variables if v.name not in by_var]
        if missing:
            raise NetworkValidationError(f"missing node for variable '{missing[0]}'")

        normalized: list[Node] = []
        for v in variables:
            nd = by_var[v.name]
            if nd.variable != v:
                raise NetworkValidationError(
                    f"node '{nd.name}' disagrees with the declared variable"
                )
            normalized.append(self._check_node(v, nd, index, variables))

        self.variables: tuple[Variable, ...] = variables
        self.nodes: tuple[Node, ...] = tuple(normalized)
        self._index = index
        self._children: dict[str, tuple[str, ...]] = self._child_map()
        self._order: tuple[str, ...] = self._toposort()
        self._kernel_cache = None  # filled lazily by credence.kernel

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _check_node(
        v: Variable, nd: Node, index: Mapping[str, int], variables: tuple[Variable, ...]
    ) -> Node:
        seen = set()
        for p in nd.parents:
            if p == v.name:
                raise NetworkValidationError(f"node '{v.name}' lists itself as a parent")
            if p not in index:
                raise NetworkValidationError(
                    f"node '{v.name}' references unknown parent '{p}'"
                )
            if p in seen:
                raise NetworkValidationError(
                    f"node '{v.name}' lists parent '{p}' twice"
                )
            seen.add(p)

        expected_rows = 1
        for p in nd.parents:
            expected_rows *= variables[index[p]].arity
        rows = nd.cpt.rows
        if len(rows) != expected_rows:
            raise NetworkValidationError(
                f"node '{v.name}' has {len(rows)} CPT rows, expected {expected_rows}"
            )
        fixed = []
        for ri, row in enumerate(rows):
            if len(row) != v.arity:
                raise NetworkValidationError(
                    f"node '{v.name}' row {ri} has {len(row)} entries, expected {v.arity}"
                )
            for p in row:
                if not (0.0 <= p <= 1.0):
                    raise NetworkValidationError(
                        f"node '{v.name}' row {ri} has entry {p!r} outside [0, 1]"
                    )
            total = 0.0
            for p in row:
                total += p
            if abs(total - 1.0) > ROW_SUM_TOLERANCE:
                raise NetworkValidationError(
                    f"node '{v.name}' row {ri} sums to {total!r}, not 1"
                )
            fixed.append(tuple(p / total for p in row))
        return Node(v, nd.parents, ConditionalTable(tuple(fixed)))

    def _child_map(self) -> dict[str, tuple[str, ...]]:
        children: dict[str, list[str]] = {v.name: [] for v in self.variables}
        for nd in self.nodes:
            for p in nd.parents:
                children[p].append(nd.name)
        return {k: tuple(v) for k, v in children.items()}

    def _toposort(self) -> tuple[str, ...]:
        # Kahn's algorithm, ties broken by declaration order.
        indeg = {nd.name: len(nd.parents) for nd in self.nodes}
        order: list[str] = []
        remaining = [v.name for v in self.variables]
        while remaining:
            ready = next((n for n in remaining if indeg[n] == 0), None)
            if ready is None:
                raise NetworkValidationError(
                    "cycle involving: " + ", ".join(remaining)
                )
            remaining.remove(ready)
            order.append(ready)
            for c in self._children[ready]:
                indeg[c] -= 1
        return tuple(order)

    # -- lookups ---------------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise QueryError(f"unknown variable '{name}'") from None

    def variable(self, name: str) -> Variable:
        return self.variables[self.index(name)]

    def node(self, name: str) -> Node:
        return self.nodes[self.index(name)]

    def state_index(self, name: str, state: str) -> int:
        v = self.variable(name)
        try:
            return v.states.index(state)
        except ValueError:
            raise QueryError(f"variable '{name}' has no state '{state}'") from None

    def children(self, name: str) -> tuple[str, ...]:
        self.index(name)
        return self._children[name]

    def __len__(self) -> int:
        return len(self.variables)

    def __repr__(self) -> str:
        return f"Network({', '.join(v.name for v in self.variables)})"


# -- operations ------------------------------------------------------------------


def topological_order(net: Network) -> tuple[str, ...]:
    """Variable names with every parent before its children.

    Deterministic: among simultaneously-ready variables, declaration order
    wins.
    """
    return net._order


def descendants(net: Network, name: str) -> set[str]:
    """Transitive closure of the child relation from ``name`` (exclusive)."""
    net.index(name)
    out: set[str] = set()
    stack = list(net.children(name))
    while stack:
        n = stack.pop()
        if n not in out:
            out.add(n)
            stack.extend(net.children(n))
    return out


def joint_probability(net: Network, assignment: Mapping[str, str]) -> float:
    """Chain-product probability of a full assignment.

    Factors are multiplied in ascending variable-name order so repeated runs
    are bit-identical.
    """
    states = _full_state_indices(net, assignment)
    return _chain_product(net, states)


def _full_state_indices(net: Network, assignment: Mapping[str, str]) -> list[int]:
    for name in assignment:
        net.index(name)
    states = []
    for v in net.variables:
        if v.name not in assignment:
            raise QueryError(f"assignment does not bind variable '{v.name}'")
        states.append(net.state_index(v.name, assignment[v.name]))
    return states


def _chain_product(net: Network, states: list[int]) -> float:
    w = 1.0
    for name in sorted(v.name for v in net.variables):
        i = net.index(name)
        nd = net.nodes[i]
        row = 0
        for p in nd.parents:
            pi = net.index(p)
            row = row * net.variables[pi].arity + states[pi]
        w = w * nd.cpt.rows[row][states[i]]
    return w


# -- document loading --------------------------------------------------------------


def load_network(text: str, *, max_variables: int | None = DEFAULT_MAX_VARIABLES) -> Network:
    """Parse and validate a JSON network document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkFormatError(f"invalid JSON: {e}") from None
    return network_from_dict(doc, max_variables=max_variables)


def load_network_file(path, *, max_variables: int | None = DEFAULT_MAX_VARIABLES) -> Network:
    """Read a network document from ``path``."""
    with open(path, "r", encoding="utf-8") as fh:
        return load_network(fh.read(), max_variables=max_variables)


def network_from_dict(doc, *, max_variables: int | None = DEFAULT_MAX_VARIABLES) -> Network:
    """Build a Network from an already-parsed document."""
    if not isinstance(doc, dict):
        raise NetworkFormatError("network document must be a JSON object")
    raw_vars = _expect_list(doc, "variables")
    raw_nodes = _expect_list(doc, "nodes")

    variables = []
    for i, rv in enumerate(raw_vars):
        if not isinstance(rv, dict) or "name" not in rv or "states" not in rv:
            raise NetworkFormatError(
                f"variables[{i}] must be an object with 'name' and 'states'"
            )
        name = rv["name"]
        states = rv["states"]
        if not isinstance(name, str) or not isinstance(states, list):
            raise NetworkFormatError(f"variables[{i}] has malformed 'name' or 'states'")
        variables.append(Variable(name, tuple(states)))

    by_name = {v.name: v for v in variables}
    nodes = []
    for i, rn in enumerate(raw_nodes):
        if not isinstance(rn, dict) or "var" not in rn or "cpt" not in rn:
            raise NetworkFormatError(f"nodes[{i}] must be an object with 'var' and 'cpt'")
        var = rn["var"]
        parents = rn.get("parents", [])
        cpt = rn["cpt"]
        if not isinstance(var, str) or not isinstance(parents, list):
            raise NetworkFormatError(f"nodes[{i}] has malformed 'var' or 'parents'")
        if var not in by_name:
            raise NetworkValidationError(f"node for undeclared variable '{var}'")
        if not isinstance(cpt, list) or not all(isinstance(r, list) for r in cpt):
            raise NetworkFormatError(f"nodes[{i}] 'cpt' must be a list of rows")
        for r in cpt:
            for p in r:
                if isinstance(p, bool) or not isinstance(p, (int, float)):
                    raise NetworkFormatError(
                        f"nodes[{i}] 'cpt' contains a non-numeric entry {p!r}"
                    )
        nodes.append(Node(by_name[var], tuple(parents), ConditionalTable(tuple(map(tuple, cpt)))))

    return Network(variables, nodes, max_variables=max_variables)


def _expect_list(doc: dict, key: str) -> list:
    if key not in doc or not isinstance(doc[key], list):
        raise NetworkFormatError(f"network document needs a '{key}' list")
    return doc[key]
