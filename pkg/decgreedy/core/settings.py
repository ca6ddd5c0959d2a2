from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Final

import yaml

from .abstracts import try_load

__all__ = [
    'Settings', 'DEFAULT_SETTINGS_FILE'
]


DEFAULT_SETTINGS_FILE: Final[str] = 'decgreedy.yml'


@dataclass
class Settings:
    tie_tolerance: float = 1e-12
    hull_tolerance: float = 1e-9
    max_curve_points: int = 400
    regular_path_warn_vertices: int = 10_000
    subset_budget: int = 12
    cycle_budget: int = 8
    polar_budget: int = 9
    curve_budget: int = 6
    log_level: str = 'INFO'
    # 0 means one worker per usable CPU
    batch_workers: int = 0

    @property
    def log_level_number(self) -> int:
        level = logging.getLevelName(self.log_level.upper())
        return level if isinstance(level, int) else logging.INFO

    def update(self, state: Dict[str, Any]) -> None:
        known = {f.name: f for f in fields(self)}

        for name in state:
            if name not in known:
                logging.warning(f'Settings loading: unknown key {name!r} ignored')

        for name, f in known.items():
            if name not in state:
                continue
            # integers are fine where floats are expected
            expected = (int, float) if f.type in ('float', float) else type(getattr(self, name))
            if try_load(state, name, expected, self) and expected == (int, float):
                setattr(self, name, float(getattr(self, name)))

    @classmethod
    def load(cls, path: Path | None = None) -> Settings:
        settings = cls()

        if path is None:
            path = Path.cwd() / DEFAULT_SETTINGS_FILE
            if not path.is_file():
                return settings

        try:
            with open(path, 'r', encoding='utf-8') as f:
                state = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            logging.warning(f'Settings loading: cannot read {path} ({e}). Using defaults.')
            return settings

        if state is None:
            return settings

        if not isinstance(state, dict):
            logging.warning(f'Settings loading: {path} is not a mapping. Using defaults.')
            return settings

        settings.update(state)
        logging.debug(f'Settings loaded from {path}')

        return settings
