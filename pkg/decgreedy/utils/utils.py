from __future__ import annotations

import logging
import sys
from importlib.metadata import PackageNotFoundError, version
from platform import python_version
from typing import Dict, Tuple

from psutil import Process, cpu_count

__all__ = [
    'check_versions', 'get_usable_cpus_count'
]


_MIN_VERSIONS: Dict[str, Tuple[int, ...]] = {
    'numpy': (1, 23),
    'scipy': (1, 9),
    'networkx': (2, 8),
}


def _parse_version(raw: str) -> Tuple[int, ...]:
    parts = []
    for chunk in raw.split('.')[:3]:
        digits = ''.join(c for c in chunk if c.isdigit())
        if not digits:
            break
        parts.append(int(digits))
    return tuple(parts)


def check_versions() -> bool:
    if sys.version_info < (3, 10, 0, 'final', 0):
        logging.warning(
            'decgreedy is not tested on Python versions prior to 3.10, but you have {} {}. Use at your own risk.'
            .format(python_version(), sys.version_info.releaselevel)
        )
        return False

    for package, minimum in _MIN_VERSIONS.items():
        try:
            installed = version(package)
        except PackageNotFoundError:
            logging.warning(f'{package} is not installed')
            return False

        if _parse_version(installed) < minimum:
            logging.warning(
                'decgreedy is not tested on {} versions prior to {}, but you have {}. Use at your own risk.'
                .format(package, '.'.join(map(str, minimum)), installed)
            )
            return False

    return True


def get_usable_cpus_count() -> int:
    try:
        return len(Process().cpu_affinity())
    except AttributeError:
        return cpu_count() or 1
