"""credence: exact beliefs on discrete causal networks, plus the confidence behind them.

Beyond posteriors, the engine computes how settled each belief is: the
distribution of BEL(target | c) over the combinations of a contingency set,
its mean (always the plain posterior), standard deviation and range, and how
these evolve under hard evidence, virtual (likelihood-ratio) evidence and
contingency refinement.
"""

from .confidence import (
    BeliefDistribution,
    BeliefPoint,
    ConfidenceSummary,
    ContingencySet,
    Contribution,
    belief_distribution,
    derive_contingency_set,
    refine_virtual_finding,
    summarize,
    top_k_distribution,
)
from .errors import (
    CredenceError,
    EvidenceError,
    ImpossibleEvidenceError,
    InconsistentRefinementError,
    NetworkFormatError,
    NetworkValidationError,
    QueryError,
    ScenarioError,
    ScenarioStepError,
    ZeroMassConditionError,
)
from .inference import (
    EvidenceSet,
    HardFinding,
    StateDistribution,
    VirtualFinding,
    conditional_belief,
    evidence_weight,
    load_evidence,
    load_evidence_file,
    posterior,
    posterior_joint,
    probability_of_evidence,
)
from .model import (
    ConditionalTable,
    Network,
    Node,
    Variable,
    descendants,
    joint_probability,
    load_network,
    load_network_file,
    network_from_dict,
    topological_order,
)
from .scenario import (
    HardStep,
    RefineStep,
    Scenario,
    ScenarioReport,
    Snapshot,
    TopKStep,
    VirtualStep,
    load_scenario,
    load_scenario_file,
    run_scenario,
)

__version__ = "0.1.0"
