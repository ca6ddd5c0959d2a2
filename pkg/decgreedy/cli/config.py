from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List

from ..core import Direction, GraphKind, InvalidInputError, OutputFormat, Settings

__all__ = [
    'Command', 'RunConfig', 'GEN_KINDS'
]


class Command(str, Enum):
    POLYGON2D = 'polygon2d'
    POLYHEDRON3D = 'polyhedron3d'
    CURVE3D = 'curve3d'
    DEGENERACY = 'degeneracy'
    CYCLE = 'cycle'
    GEN = 'gen'

    def __str__(self) -> str:
        return self.value

    @classmethod
    def list(cls) -> List[str]:
        return [e.value for e in cls]


GEN_KINDS = ['points2d', 'points3d', *GraphKind.list()]

_FIGURES: Dict[OutputFormat, Command] = {
    OutputFormat.SVG: Command.POLYGON2D,
    OutputFormat.OBJ: Command.POLYHEDRON3D,
}


@dataclass
class RunConfig:
    """
    One invocation of the command line.

    ``input`` is the instance file of a solve command and ``output`` the result file (stdout
    when unset); with ``svg`` or ``obj`` output it is the figure path and the JSON result goes to
    stdout. ``gen`` writes its instance to ``instance_path`` and, with ``batch`` > 0, verifies
    that many seeded instances against the oracles instead.
    """

    command: Command
    input: Path | None = None
    output: Path | None = None
    format: OutputFormat = OutputFormat.JSON
    direction: Direction = Direction.MAXMIN
    kind: GraphKind | None = None
    allow_repeated_segments: bool = False
    include_straight: bool = False
    degrees: bool = False
    oracle: bool = False
    engine: str = 'pocket'
    seed: int = 0
    gen_kind: str = 'points2d'
    size: int = 8
    edges: int = 12
    batch: int = 0
    instance_path: Path | None = None
    settings: Settings = field(default_factory=Settings)

    def validate(self) -> None:
        if self.format in _FIGURES:
            if self.command is not _FIGURES[self.format]:
                raise InvalidInputError(
                    f'--format {self.format} is only available for {_FIGURES[self.format]}, not {self.command}'
                )
            if self.output is None:
                raise InvalidInputError(f'--format {self.format} needs an --output path')

        if self.command is Command.GEN:
            if self.gen_kind not in GEN_KINDS:
                raise InvalidInputError(f'unknown instance kind {self.gen_kind!r}, expected one of {GEN_KINDS}')
            if self.size < 0 or self.edges < 0 or self.batch < 0:
                raise InvalidInputError('gen: sizes and batch count must be non-negative')
            if self.batch == 0 and self.instance_path is None:
                raise InvalidInputError('gen: an instance path is needed unless --batch is given')
        elif self.input is None:
            raise InvalidInputError(f'{self.command}: an input file is needed')

        if self.degrees and self.format is not OutputFormat.TEXT:
            raise InvalidInputError('--degrees only applies to --format text; JSON is always in radians')
