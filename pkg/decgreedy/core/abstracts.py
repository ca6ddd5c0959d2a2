from __future__ import annotations

import logging
from typing import Any, Callable, Mapping, Tuple, Type, TypeVar

__all__ = [
    'storage_err_msg', 'try_load'
]


T = TypeVar('T')

_SetterFunction = Callable[[str, Any], None]


def storage_err_msg(owner: str, name: str) -> str:
    pretty_name = name.replace('_', ' ').strip()

    return f'Settings loading ({owner}): failed to parse {pretty_name}. Using default.'


def try_load(
    state: Mapping[str, Any], name: str, expected_type: Type[T] | Tuple[Type[Any], ...],
    receiver: object | _SetterFunction, error_msg: str | None = None, nullable: bool = False
) -> bool:
    """
    Copy ``state[name]`` onto ``receiver`` if it has the expected type.

    ``receiver`` is either a setter taking ``(name, value)`` or an object whose attribute of the
    same name gets overwritten. A missing key or a wrong type is logged and leaves the default.
    """
    if error_msg is None:
        error_msg = storage_err_msg(
            receiver.__class__.__name__ if not callable(receiver) else getattr(receiver, '__name__', '?'), name
        )

    try:
        value = state[name]
        # bool is an int subclass; a YAML `true` is never a valid count
        if isinstance(value, bool) and expected_type is not bool and bool not in _as_tuple(expected_type):
            raise TypeError(f'{name}: got a boolean')
        if not isinstance(value, expected_type) and not (nullable and value is None):
            raise TypeError(f'{name}: expected {expected_type}, got {type(value).__name__}')
    except (KeyError, TypeError) as e:
        logging.error(e)
        logging.warning(error_msg)
        return False

    if callable(receiver):
        receiver(name, value)
        return True

    try:
        setattr(receiver, name, value)
    except AttributeError as e:
        logging.error(e)
        logging.warning(error_msg)
        return False

    return True


def _as_tuple(expected_type: Type[Any] | Tuple[Type[Any], ...]) -> Tuple[Type[Any], ...]:
    return expected_type if isinstance(expected_type, tuple) else (expected_type,)
