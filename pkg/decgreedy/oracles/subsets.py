from __future__ import annotations

from itertools import combinations
from typing import FrozenSet, Set, Tuple

from ..core import Quality
from ..greedy import BottleneckInstance, subset_quality
from .budget import OracleBudget

__all__ = [
    'bottleneck_subset_oracle'
]


def bottleneck_subset_oracle(
    instance: BottleneckInstance, budget: OracleBudget | None = None, tolerance: float = 0.0
) -> Tuple[Quality, FrozenSet[int]]:
    """
    Best set quality over all nonempty subsets, and the union of the subsets reaching it.

    With a positive ``tolerance``, qualities within it of the best count as ties.
    """
    (budget or OracleBudget()).check('subset', instance.size)

    best = Quality.neg_inf()
    members: Set[int] = set()

    for k in range(1, instance.size + 1):
        for subset in combinations(range(instance.size), k):
            q = subset_quality(instance, subset)

            if q.is_finite and best.is_finite and abs(float(q) - float(best)) <= tolerance:
                members.update(subset)
                if q > best:
                    best = q
            elif q > best:
                best, members = q, set(subset)
            elif q == best:
                members.update(subset)

    return best, frozenset(members)
