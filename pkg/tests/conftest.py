import random
from pathlib import Path

import pytest

from proxlat.io import read_context

import reference_data

DATA = Path(__file__).parent / "data"


@pytest.fixture
def ratings_path():
    return DATA / "ratings.csv"


@pytest.fixture
def phi(ratings_path):
    return read_context(ratings_path, stars=5)[2]


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def ref():
    return reference_data


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion (one test each)."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if outcome != "passed" or name not in results:
                results[name] = "PASS" if outcome == "passed" else "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"criterion {name.split('_')[2]}: {results[name]}  ({name})")
