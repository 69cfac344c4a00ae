"""Brute-force budgets shared by the group-theoretic modules."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 50_000  # element-count ceiling for brute-force group loops
CONVOLUTION_PAIR_BUDGET = 100_000  # per class-pair product loop
ORBIFOLD_BUDGET = 10_000  # group order in the commuting-pair sum


class BudgetExceeded(RuntimeError):
    """A brute-force loop would exceed the configured element budget."""


def budget() -> int:
    """Element-count ceiling; override with the WFK_BUDGET environment variable."""
    raw = os.environ.get("WFK_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


def check_budget(size: int, what: str, limit: int | None = None) -> None:
    cap = budget() if limit is None else limit
    if size > cap:
        raise BudgetExceeded(f"{what}: {size} elements exceeds budget {cap}")
