from __future__ import annotations

from abc import abstractmethod
from typing import Callable, Dict, FrozenSet, Iterable, Mapping, Tuple

from ..core import ABC, InvalidInputError, InvalidStateError, Quality, QualityLike, abstract_attribute

__all__ = [
    'BottleneckInstance', 'TableInstance', 'FunctionInstance', 'subset_quality'
]


class BottleneckInstance(ABC):
    """
    A monotone bottleneck subset problem with removal state.

    Elements are the dense ids ``0..size-1``. Every instance starts with all of them alive;
    ``remove`` shrinks the surviving set and ``quality`` answers q(x, S) for the current S.
    Qualities must be monotone: removing elements never raises the quality of a survivor.
    """

    size: int = abstract_attribute()

    @property
    @abstractmethod
    def alive(self) -> FrozenSet[int]:
        raise NotImplementedError

    @abstractmethod
    def quality(self, x: int) -> Quality:
        raise NotImplementedError

    @abstractmethod
    def remove(self, x: int) -> None:
        raise NotImplementedError

    @abstractmethod
    def clone(self) -> BottleneckInstance:
        """A fresh copy of this instance with every element alive again."""
        raise NotImplementedError

    def qualities(self) -> Dict[int, Quality]:
        return {x: self.quality(x) for x in sorted(self.alive)}

    def set_quality(self) -> Quality:
        """Q(S), the least quality of a survivor, or -inf for the empty set."""
        return min(self.qualities().values(), default=Quality.neg_inf())

    def _check_alive(self, x: int) -> None:
        if x not in self.alive:
            raise InvalidStateError(f'{self.__class__.__name__}: element {x} is not alive')


def subset_quality(instance: BottleneckInstance, subset: Iterable[int]) -> Quality:
    """Q(subset) computed by replaying removals of the complement on a clone."""
    keep = frozenset(subset)
    replay = instance.clone()
    for x in range(replay.size):
        if x not in keep:
            replay.remove(x)
    return replay.set_quality()


class _SetStateInstance(BottleneckInstance):
    def __init__(self, size: int) -> None:
        if size < 0:
            raise InvalidInputError('instance size must be non-negative')
        self.size = size
        self._alive = set(range(size))

    @property
    def alive(self) -> FrozenSet[int]:
        return frozenset(self._alive)

    def remove(self, x: int) -> None:
        self._check_alive(x)
        self._alive.discard(x)


class TableInstance(_SetStateInstance):
    """Qualities looked up in an explicit table keyed by (element, surviving set)."""

    def __init__(self, size: int, table: Mapping[Tuple[int, FrozenSet[int]], QualityLike]) -> None:
        super().__init__(size)
        self.table = {key: Quality(value) for key, value in table.items()}

    def quality(self, x: int) -> Quality:
        self._check_alive(x)
        try:
            return self.table[(x, frozenset(self._alive))]
        except KeyError:
            raise InvalidInputError(f'TableInstance: no quality for element {x} in {sorted(self._alive)}') from None

    def clone(self) -> TableInstance:
        twin = TableInstance.__new__(TableInstance)
        twin.size, twin._alive, twin.table = self.size, set(range(self.size)), self.table
        return twin


class FunctionInstance(_SetStateInstance):
    """Qualities given by a callback ``q(x, surviving_set)``."""

    def __init__(self, size: int, q: Callable[[int, FrozenSet[int]], QualityLike]) -> None:
        super().__init__(size)
        self.q = q

    def quality(self, x: int) -> Quality:
        self._check_alive(x)
        return Quality(self.q(x, frozenset(self._alive)))

    def clone(self) -> FunctionInstance:
        return FunctionInstance(self.size, self.q)
