from __future__ import annotations

import logging
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError

__all__ = [
    'Point2', 'Point3', 'as_point_array', 'dedup_points'
]


class Point2(NamedTuple):
    x: float
    y: float


class Point3(NamedTuple):
    x: float
    y: float
    z: float


def as_point_array(points: Iterable[Sequence[float]] | np.ndarray, dim: int) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)

    if arr.size == 0:
        return np.empty((0, dim), dtype=np.float64)

    if arr.ndim != 2 or arr.shape[1] != dim:
        raise InvalidInputError(f'expected {dim}-dimensional points, got array of shape {arr.shape}')

    if not np.isfinite(arr).all():
        raise InvalidInputError('point coordinates must be finite')

    return arr


def dedup_points(
    points: Iterable[Sequence[float]] | np.ndarray, dim: int
) -> Tuple[np.ndarray, List[int]]:
    """
    Drop exact duplicates, keeping the first occurrence.

    Returns the deduplicated array and, for each kept point, the index it had in the input.
    """
    arr = as_point_array(points, dim)

    if len(arr) == 0:
        return arr, []

    _, first = np.unique(arr, axis=0, return_index=True)
    keep = np.sort(first)

    if len(keep) != len(arr):
        logging.warning(f'Input: dropped {len(arr) - len(keep)} duplicate point(s)')

    return arr[keep], keep.tolist()
