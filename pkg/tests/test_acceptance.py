"""Acceptance battery: every criterion at its stated tolerance.

Each test prints one pass/fail line (visible with ``pytest -s`` or on
failure) and asserts both the numeric predicate and the runtime budget.
The same battery is reachable without a test harness through
``cartanconn --selftest``.
"""

import pytest

from cartanconn import acceptance


@pytest.mark.parametrize(
    "criterion",
    acceptance.ALL_CRITERIA,
    ids=[fn.__name__.replace("criterion_", "") for fn in acceptance.ALL_CRITERIA],
)
def test_criterion(criterion):
    result = criterion(seed=0)
    print(result.line())
    assert result.passed, result.line()
    assert result.in_budget, result.line()
