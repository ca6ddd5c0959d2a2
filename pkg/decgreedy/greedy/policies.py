from __future__ import annotations

from abc import abstractmethod
from typing import Iterable, List, Mapping, Sequence

import numpy as np

from ..core import ABC, InvalidInputError, Quality

__all__ = [
    'RemovalPolicy',
    'MinQualityPolicy', 'LowestIdPolicy', 'HighestQualityPolicy', 'RandomPolicy', 'ReplayPolicy',
    'replay_policy', 'default_policies'
]


class RemovalPolicy(ABC):
    """Chooses which eligible element the decremental greedy removes next."""

    @abstractmethod
    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        raise NotImplementedError

    def reset(self) -> None:
        ...

    def __repr__(self) -> str:
        return self.__class__.__name__


class MinQualityPolicy(RemovalPolicy):
    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        return min(eligible, key=lambda x: (qualities[x], x))


class LowestIdPolicy(RemovalPolicy):
    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        return min(eligible)


class HighestQualityPolicy(RemovalPolicy):
    """The least useful choice that is still legal: the best eligible element, highest id first."""

    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        return max(eligible, key=lambda x: (qualities[x], x))


class RandomPolicy(RemovalPolicy):
    def __init__(self, seed: int | None = 0) -> None:
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        return int(eligible[self.rng.integers(len(eligible))])

    def reset(self) -> None:
        self.rng = np.random.default_rng(self.seed)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(seed={self.seed})'


class ReplayPolicy(RemovalPolicy):
    """Removes elements in a fixed order; an ineligible element is an error."""

    def __init__(self, order: Iterable[int]) -> None:
        self.order: List[int] = list(order)
        self.position = 0

    def choose(self, eligible: Sequence[int], qualities: Mapping[int, Quality]) -> int:
        if self.position >= len(self.order):
            raise InvalidInputError(f'ReplayPolicy: order exhausted after {self.position} removals')

        x = self.order[self.position]

        if x not in eligible:
            raise InvalidInputError(
                f'ReplayPolicy: element {x} at step {self.position} is not eligible '
                f'(quality {qualities.get(x)})'
            )

        self.position += 1
        return x

    def reset(self) -> None:
        self.position = 0


def replay_policy(order: Iterable[int]) -> ReplayPolicy:
    return ReplayPolicy(order)


def default_policies(seed: int = 0) -> List[RemovalPolicy]:
    return [MinQualityPolicy(), LowestIdPolicy(), HighestQualityPolicy(), RandomPolicy(seed)]
