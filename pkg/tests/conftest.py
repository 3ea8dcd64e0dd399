from __future__ import annotations

from pathlib import Path

import pytest

import credence

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def football() -> credence.Network:
    return credence.load_network_file(FIXTURES / "football.json")


@pytest.fixture(scope="session")
def coins() -> credence.Network:
    return credence.load_network_file(FIXTURES / "coins.json")


@pytest.fixture(scope="session")
def coins_reversed() -> credence.Network:
    return credence.load_network_file(FIXTURES / "coins_reversed.json")


@pytest.fixture(scope="session")
def football_nocall() -> credence.Network:
    return credence.load_network_file(FIXTURES / "football_nocall.json")


@pytest.fixture(scope="session")
def no_evidence() -> credence.EvidenceSet:
    return credence.EvidenceSet()


@pytest.fixture(scope="session")
def reports_evidence() -> credence.EvidenceSet:
    """Committee assurance (no suspension) plus the 4:1 wet-field report."""
    return credence.load_evidence_file(FIXTURES / "evidence_reports.json")


@pytest.fixture(scope="session")
def nocall_evidence() -> credence.EvidenceSet:
    """Reports evidence plus the 3:1-against-win silence of the phone."""
    return credence.load_evidence_file(FIXTURES / "evidence_reports_nocall.json")


@pytest.fixture(scope="session")
def nocall_hard_evidence() -> credence.EvidenceSet:
    """Same story with the silence as a hard-observed explicit node."""
    return credence.load_evidence_file(FIXTURES / "evidence_nocall_hard.json")
