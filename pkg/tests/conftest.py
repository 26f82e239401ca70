import sys
from fractions import Fraction

import pytest

from thermosched import Instance, Job


@pytest.fixture
def four_job_example() -> Instance:
    """The worked four-job example: optimum 4, greedy start loses job 3."""
    return Instance(
        jobs=(
            Job(1, 0, 2, Fraction(2, 5)),
            Job(2, 0, 4, Fraction(3, 5)),
            Job(3, 2, 3, Fraction(19, 10)),
            Job(4, 4, 6, Fraction(4, 5)),
        )
    )


@pytest.fixture
def branch1_instance() -> Instance:
    """Adversary family, branch taken when the policy executes job 1."""
    return Instance(
        jobs=(Job(1, 0, 3, Fraction(6, 5)), Job(2, 1, 2, Fraction(8, 5)))
    )


@pytest.fixture
def branch2_instance() -> Instance:
    """Adversary family, branch taken when the policy idles at slot 0."""
    return Instance(
        jobs=(Job(1, 0, 3, Fraction(6, 5)), Job(3, 2, 3, Fraction(8, 5)))
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "CRITERION_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
