"""Search-node budgets for the exhaustive routines."""

from __future__ import annotations

import os

from .errors import ResourceError

DEFAULT_BUDGET = 10**7
ENV_VAR = "TILELAB_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


class Budget:
    """Counts search nodes and raises :class:`ResourceError` past ``limit``.

    ``None`` means the process-wide default (``TILELAB_BUDGET`` or 10**7).
    """

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = default_budget() if limit is None else int(limit)
        self.used = 0
        self.what = what

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise ResourceError(
                f"{self.what} exceeded budget of {self.limit} nodes",
                budget=self.limit,
            )

    def require(self, amount: int, what: str | None = None) -> None:
        """Fail up front when a known work estimate is already over the limit."""
        if amount > self.limit:
            raise ResourceError(
                f"{what or self.what} needs about {amount} nodes, budget is {self.limit}",
                budget=self.limit,
                estimate=amount,
            )


def as_budget(budget: Budget | int | None, what: str = "search") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget, what)
