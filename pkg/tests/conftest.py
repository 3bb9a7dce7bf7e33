"""Shared fixtures.

Every ``saturate`` call made anywhere in the suite (directly, through the
campaign driver or through the CLI) is wrapped so that each proof found is
re-derived by the independent checker.  A failing check fails the test
that produced the proof.
"""

import os
from pathlib import Path

import pytest

import hintprover
import hintprover.cli
import hintprover.saturation
import hintprover.simplifier
from hintprover.checker import check_proof
from hintprover.syntax import load_problem, parse_problem

FIXTURES = Path(hintprover.__file__).parent / "fixtures"

GROUP_AXIOMS = """\
e * x = x.
x' * x = e.
(x * y) * z = x * (y * z).
"""

CHECKED = {"proofs": 0, "failures": []}
_original_saturate = hintprover.saturation.saturate


def _checked_saturate(problem, *args, **kwargs):
    outcome = _original_saturate(problem, *args, **kwargs)
    if outcome.found:
        CHECKED["proofs"] += 1
        result = check_proof(outcome.proof, problem)
        if not result.ok:
            CHECKED["failures"].append(str(result))
            raise AssertionError("checker rejected a proof: %s" % result)
    return outcome


for _module in (hintprover.saturation, hintprover.simplifier, hintprover.cli, hintprover):
    _module.saturate = _checked_saturate


def group_problem(goal: str, extra: str = "") -> "hintprover.Problem":
    return parse_problem("assumptions.\n%s%s\nend_of_assumptions.\ngoals.\n%s.\nend_of_goals.\n"
                         % (GROUP_AXIOMS, extra, goal))


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


@pytest.fixture
def load_fixture():
    return lambda name: load_problem(FIXTURES / name)


def kkp_seconds() -> float:
    """Budget for the kkp stretch run; the full ten minutes unless overridden."""
    return float(os.environ.get("HINTPROVER_KKP_SECONDS", "600"))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_line("proofs re-derived by the checker: %d, rejected: %d"
                                % (CHECKED["proofs"], len(CHECKED["failures"])))
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
