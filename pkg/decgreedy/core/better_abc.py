from __future__ import annotations

from abc import ABCMeta as NativeABCMeta
from typing import Any, List, TypeVar, cast

__all__ = [
    'ABC', 'ABCMeta', 'abstract_attribute'
]

T = TypeVar('T')


class _PendingAttribute:
    _is_abstract_attribute_ = True

    def __repr__(self) -> str:
        return '<abstract attribute>'


def abstract_attribute(obj: T | None = None) -> T:
    """Declare an attribute every concrete subclass must assign in ``__init__``."""
    return cast(T, obj if obj is not None else _PendingAttribute())


def _pending_attributes(instance: Any) -> List[str]:
    return [
        name for name in dir(instance)
        if getattr(getattr(instance, name, None), '_is_abstract_attribute_', False)
    ]


class ABCMeta(NativeABCMeta):
    def __call__(cls, *args: Any, **kwargs: Any) -> Any:
        instance = NativeABCMeta.__call__(cls, *args, **kwargs)

        if pending := _pending_attributes(instance):
            raise NotImplementedError(
                f"{cls.__name__} doesn't initialize following abstract attributes: {', '.join(pending)}"
            )

        return instance


class ABC(metaclass=ABCMeta):
    __slots__ = ()
