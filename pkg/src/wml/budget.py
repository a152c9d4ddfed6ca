"""Budget guards shared by the enumeration engines.

Every exhaustive enumeration in this package is watched by an explicit
budget so that accidental combinatorial blowups fail fast instead of
hanging.  Budgets can be overridden per call, or globally through the
``WML_BUDGET`` environment variable.
"""

from __future__ import annotations

import os

# Default ceilings.  An "evaluation" is one word evaluation / tuple visit.
DEFAULT_EVAL_BUDGET = 10**7
DEFAULT_GROUP_ELEMENT_BUDGET = 10**5
DEFAULT_ACTION_ORDER_BUDGET = 10**5
DEFAULT_WORD_LENGTH_BOUND = 16
DEFAULT_WHITEHEAD_RANK_BOUND = 4


class BudgetError(Exception):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed} > budget {budget}")


class ValidationError(Exception):
    """Malformed input (bad word syntax, bad group table, bad flags)."""


def eval_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("WML_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"WML_BUDGET is not an integer: {env!r}")
    return DEFAULT_EVAL_BUDGET


def check(what: str, needed: int, budget: int) -> None:
    if needed > budget:
        raise BudgetError(what, needed, budget)
