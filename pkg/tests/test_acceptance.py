"""One test per exit criterion; each prints a single PASS/FAIL line."""

import pytest

from isomeric.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    outcome = run_criterion(number)
    with capsys.disabled():
        print("\n" + outcome.line)
    assert outcome.passed, outcome.line
