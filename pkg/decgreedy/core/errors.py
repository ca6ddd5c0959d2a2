from __future__ import annotations

__all__ = [
    'DecGreedyError',
    'InvalidInputError', 'InvalidStateError', 'BudgetExceededError', 'ParseError',
    'InfeasibleError', 'NoPolygon', 'NoPolyhedron', 'NoCycle', 'NoCurve', 'DegenerateHull',
    'ReconstructionError'
]


class DecGreedyError(Exception):
    exit_code = 1


class InvalidInputError(DecGreedyError, ValueError):
    ...


class InvalidStateError(DecGreedyError, RuntimeError):
    exit_code = 4


class BudgetExceededError(InvalidInputError):
    ...


class ParseError(DecGreedyError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f'line {line}: {message}' if line is not None else message)


class InfeasibleError(DecGreedyError):
    exit_code = 3


class NoPolygon(InfeasibleError):
    ...


class NoPolyhedron(InfeasibleError):
    ...


class NoCycle(InfeasibleError):
    ...


class NoCurve(InfeasibleError):
    ...


class DegenerateHull(InfeasibleError):
    ...


class ReconstructionError(InvalidStateError):
    """A solver reached a state its correctness argument rules out."""
