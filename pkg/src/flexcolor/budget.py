"""Search-size guardrail shared by the exhaustive engines."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed (or has exceeded) its node budget."""

    def __init__(self, needed: int | None, budget: int, what: str = "search"):
        self.needed = needed
        self.budget = budget
        if needed is None:
            msg = f"{what} exceeded its budget of {budget} nodes"
        else:
            msg = f"{what} needs {needed} nodes, budget is {budget}"
        super().__init__(msg + "; raise the budget or use sampled mode")


def default_budget() -> int:
    raw = os.environ.get("FLEXCOLOR_BUDGET")
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError("FLEXCOLOR_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


class Counter:
    __slots__ = ("budget", "count", "what")

    def __init__(self, budget: int | None, what: str = "search"):
        self.budget = default_budget() if budget is None else budget
        self.count = 0
        self.what = what

    def tick(self, amount: int = 1):
        self.count += amount
        if self.count > self.budget:
            raise BudgetExceeded(None, self.budget, self.what)
