from __future__ import annotations

from dataclasses import dataclass

from ..core import BudgetExceededError, Settings

__all__ = [
    'OracleBudget'
]


@dataclass(frozen=True)
class OracleBudget:
    subset: int = 12
    cycle: int = 8
    polar: int = 9
    curve: int = 6

    @classmethod
    def from_settings(cls, settings: Settings) -> OracleBudget:
        return cls(settings.subset_budget, settings.cycle_budget, settings.polar_budget, settings.curve_budget)

    def check(self, kind: str, size: int) -> None:
        limit = getattr(self, kind)
        if size > limit:
            raise BudgetExceededError(f'{kind} oracle: size {size} exceeds the budget of {limit}')
