"""One test per acceptance criterion; each prints its verdict line."""

import pytest

from arperfect.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, len(CRITERIA) + 1)])
def test_criterion(criterion, acceptance_log):
    result = criterion(seed=0)
    line = result.line()
    print(line)
    acceptance_log.append(line)
    assert result.passed, line
