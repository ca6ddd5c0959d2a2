from __future__ import annotations

import logging

from ..core import (
    GreedyOutcome, GreedyTrace, InvalidInputError, KnownBetaOutcome, Quality, QualityLike
)
from .instance import BottleneckInstance
from .policies import MinQualityPolicy, RemovalPolicy

__all__ = [
    'decremental_greedy', 'known_beta'
]


def decremental_greedy(instance: BottleneckInstance, policy: RemovalPolicy | None = None) -> GreedyOutcome:
    """
    Remove eligible elements until nothing survives, remembering the best surviving set.

    An element is eligible when its quality is at most Q(T), the best set quality seen so far.
    T only changes on strict improvement, so it ends as the largest optimal set: the unique
    maximal bottleneck subset, whatever the policy picks. The instance is consumed.
    """
    if not instance.alive:
        raise InvalidInputError('decremental_greedy: empty universe')

    if policy is None:
        policy = MinQualityPolicy()
    policy.reset()

    trace = GreedyTrace()

    while instance.alive:
        qualities = instance.qualities()
        current = min(qualities.values())

        if current > trace.best_value:
            trace.best_value = current
            trace.best_prefix = len(trace.removals)

        eligible = [x for x, q in qualities.items() if q <= trace.best_value]
        x = policy.choose(eligible, qualities)

        trace.removals.append((x, qualities[x]))
        instance.remove(x)

    subset = trace.survivors(instance.size)

    logging.debug(
        f'decremental_greedy: theta={trace.best_value} after {trace.best_prefix} of '
        f'{len(trace.removals)} removals ({policy!r})'
    )

    return GreedyOutcome(trace.best_value, subset, trace)


def known_beta(
    instance: BottleneckInstance, beta: QualityLike, policy: RemovalPolicy | None = None
) -> KnownBetaOutcome:
    """
    Remove every element of quality below ``beta`` until none is left.

    With beta equal to the optimum this leaves the maximal bottleneck subset. A beta above the
    optimum empties the universe, which is reported through ``emptied``.
    """
    beta = Quality(beta)

    if policy is None:
        policy = MinQualityPolicy()
    policy.reset()

    while instance.alive:
        qualities = instance.qualities()
        below = [x for x, q in qualities.items() if q < beta]
        if not below:
            break
        instance.remove(policy.choose(below, qualities))

    subset = instance.alive

    if not subset:
        logging.warning(f'known_beta: beta={beta} exceeds the optimum, nothing survives')

    return KnownBetaOutcome(subset, not subset)
