"""Resource budgets for enumeration-heavy operations.

Budgets fail loudly: exceeding one raises BudgetError instead of silently
truncating.  Defaults can be overridden per call or via the environment
variables LAPOLY_BUDGET_POINTS and LAPOLY_BUDGET_CELLS.
"""

from __future__ import annotations

import os

DEFAULT_POINT_BUDGET = 10**9
DEFAULT_CELL_BUDGET = 10**6


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


def point_budget(override=None):
    if override is not None:
        return int(override)
    return int(os.environ.get("LAPOLY_BUDGET_POINTS", DEFAULT_POINT_BUDGET))


def cell_budget(override=None):
    if override is not None:
        return int(override)
    return int(os.environ.get("LAPOLY_BUDGET_CELLS", DEFAULT_CELL_BUDGET))
