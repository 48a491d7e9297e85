"""The ten acceptance criteria at their stated tolerances, one test each.

Every check's pass/fail line is collected and printed in the terminal summary.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from phdim.acceptance import CHECKS


@pytest.mark.slow
@pytest.mark.parametrize("key", list(CHECKS))
def test_criterion(key):
    result = CHECKS[key]()
    ACCEPTANCE_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()
