"""Enumeration budgets.

Exceeding a budget is always an error, never a silent truncation.  The
``HELLY_BUDGET`` environment variable overrides the enumeration and subset
defaults (not the set-family member cap, which guards a 2^p loop).
"""

import os

from .errors import BudgetExceeded, InputError

ENUMERATION_BUDGET = 10**6
SUBSET_BUDGET = 10**5
MAX_SET_FAMILY_MEMBERS = 24


def _env_override():
    raw = os.environ.get("HELLY_BUDGET")
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"HELLY_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("HELLY_BUDGET must be positive")
    return value


def enumeration_budget(explicit=None) -> int:
    if explicit is not None:
        return explicit
    return _env_override() or ENUMERATION_BUDGET


def subset_budget(explicit=None) -> int:
    if explicit is not None:
        return explicit
    return _env_override() or SUBSET_BUDGET


def charge(amount: int, budget: int, what: str) -> None:
    if amount > budget:
        raise BudgetExceeded(f"{what}: {amount} exceeds the budget of {budget}")
