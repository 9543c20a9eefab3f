"""One test per acceptance criterion; each prints its pass/fail line."""
import pytest

from mixsmooth.acceptance import CRITERIA


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion, acceptance_lines):
    result = criterion()
    line = result.line()
    acceptance_lines.append((result.number, line))
    print(line)
    assert result.passed, line
