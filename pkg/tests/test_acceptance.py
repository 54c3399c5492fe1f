"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from ncfilt.acceptance import CRITERIA, run


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_lines):
    (outcome,) = run([number])
    line = outcome.line()
    print(line)
    acceptance_lines.append(line)
    assert outcome.passed, outcome.failures
