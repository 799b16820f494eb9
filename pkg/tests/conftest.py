from __future__ import annotations

from pathlib import Path

import pytest

from freqlangid.data import MINI_DIR, MINI_MANIFEST, bundled_profiles
from freqlangid.evaluation import ingest_dataset

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def profiles():
    return bundled_profiles()


@pytest.fixture(scope="session")
def mini_samples():
    samples, errors = ingest_dataset(MINI_DIR, MINI_MANIFEST)
    assert not errors
    return samples


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
