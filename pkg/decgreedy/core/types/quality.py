from __future__ import annotations

import math
from enum import IntEnum
from typing import Any, SupportsFloat, Union

__all__ = [
    'Quality', 'QualityKind', 'QualityLike'
]


class QualityKind(IntEnum):
    NEG_INF = -1
    FINITE = 0
    POS_INF = 1


QualityLike = Union['Quality', SupportsFloat]


class Quality:
    """Extended real: -inf, a finite real, or +inf. Infinite values carry no payload."""

    __slots__ = ('kind', 'value')

    kind: QualityKind
    value: float

    def __init__(self, init_value: QualityLike = 0.0) -> None:
        if isinstance(init_value, Quality):
            self.kind, self.value = init_value.kind, init_value.value
            return

        value = float(init_value)

        if math.isnan(value):
            raise ValueError('Quality: NaN is not an extended real')

        if math.isinf(value):
            self.kind = QualityKind.POS_INF if value > 0 else QualityKind.NEG_INF
            self.value = 0.0
        else:
            self.kind = QualityKind.FINITE
            self.value = value

    @classmethod
    def neg_inf(cls) -> Quality:
        return cls(-math.inf)

    @classmethod
    def pos_inf(cls) -> Quality:
        return cls(math.inf)

    @property
    def is_finite(self) -> bool:
        return self.kind is QualityKind.FINITE

    def _key(self) -> tuple[int, float]:
        return (int(self.kind), self.value)

    def __eq__(self, other: object) -> bool:
        if other is None:
            return False
        if not isinstance(other, Quality):
            try:
                other = Quality(other)  # type: ignore
            except (TypeError, ValueError):
                return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: QualityLike) -> bool:
        return self._key() < Quality(other)._key()

    def __le__(self, other: QualityLike) -> bool:
        return self._key() <= Quality(other)._key()

    def __gt__(self, other: QualityLike) -> bool:
        return self._key() > Quality(other)._key()

    def __ge__(self, other: QualityLike) -> bool:
        return self._key() >= Quality(other)._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __neg__(self) -> Quality:
        return Quality(-float(self))

    def __float__(self) -> float:
        if self.kind is QualityKind.NEG_INF:
            return -math.inf
        if self.kind is QualityKind.POS_INF:
            return math.inf
        return self.value

    def __str__(self) -> str:
        if self.kind is QualityKind.NEG_INF:
            return '-inf'
        if self.kind is QualityKind.POS_INF:
            return 'inf'
        return repr(self.value)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self})'

    def to_json(self) -> float | str:
        # JSON has no infinities, so they travel as strings
        return self.value if self.is_finite else str(self)

    @classmethod
    def from_json(cls, raw: Any) -> Quality:
        if isinstance(raw, str):
            if raw not in ('-inf', 'inf'):
                raise ValueError(f'Quality: cannot decode {raw!r}')
            return cls(float(raw))
        return cls(raw)
