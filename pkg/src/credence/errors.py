"""Exception taxonomy shared by all engine layers.

The CLI maps these onto exit codes: format/validation/query/evidence
problems exit 2, impossible evidence exits 3, scenario step failures
exit 4 and plain I/O failures exit 1.
"""

from __future__ import annotations


class CredenceError(Exception):
    """Base class for every error raised by this package."""


class NetworkFormatError(CredenceError):
    """The network document is not well-formed (bad JSON, wrong shape)."""


class NetworkValidationError(CredenceError):
    """The network document is well-formed but semantically invalid."""


class QueryError(CredenceError):
    """A query referenced an unknown variable/state or was malformed."""


class EvidenceError(CredenceError):
    """An evidence set is malformed or inconsistent with the network."""


class ImpossibleEvidenceError(CredenceError):
    """The evidence set has probability zero; posteriors are undefined."""


class ZeroMassConditionError(CredenceError):
    """A conditioning assignment has zero posterior probability."""


class InconsistentRefinementError(CredenceError):
    """Branch likelihoods do not average back to the finding they refine."""


class ScenarioError(CredenceError):
    """A scenario document is malformed."""


class ScenarioStepError(ScenarioError):
    """A scenario step failed while being applied.

    ``step`` is the 1-based index of the failing step.
    """

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
