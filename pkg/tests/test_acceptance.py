"""One test per acceptance criterion, each printing a PASS/FAIL line.

The lines are also repeated in the pytest terminal summary (see conftest).
"""

import pytest

from sepinv.acceptance import CRITERION_KEYS, run_criteria
from sepinv.config import DEFAULT_SEED

LINES: list[str] = []


@pytest.mark.parametrize("key", CRITERION_KEYS)
def test_criterion(key):
    (result,) = run_criteria([key], seed=DEFAULT_SEED)
    line = result.line()
    LINES.append(line)
    print(line)
    assert result.passed, line
