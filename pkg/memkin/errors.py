"""
errors.py
---------
Exception hierarchy shared by the library and the command line.

Input problems derive from ValueError and map to exit code 2; numerical
failures derive from ArithmeticError and map to exit code 3.
"""

from typing import Iterable, Optional


class MemkinError(Exception):
    """Root of every error raised by memkin."""


class DomainError(MemkinError, ValueError):
    pass


class NotReducibleError(MemkinError, ValueError):
    pass


class SchemeError(MemkinError, ValueError):
    pass


class NetlistError(MemkinError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NetlistSyntaxError(NetlistError):
    def __init__(self, message: str, line: int, column: int):
        self.column = column
        super().__init__(f"column {column}: {message}", line=line)


class NetlistSemanticError(NetlistError):
    def __init__(self, message: str, entity: Optional[str] = None, line: Optional[int] = None):
        self.entity = entity
        super().__init__(message, line=line)


class MemkinNumericError(MemkinError, ArithmeticError):
    pass


class TopologyError(MemkinNumericError):
    def __init__(self, message: str, nodes: Iterable[str] = ()):
        self.nodes = tuple(sorted(nodes))
        if self.nodes:
            message = f"{message} (nodes: {', '.join(self.nodes)})"
        super().__init__(message)


class CapacityError(MemkinNumericError):
    pass


class AccuracyError(MemkinNumericError):
    pass


class DegeneracyError(MemkinNumericError):
    pass


class InfiniteTimeError(MemkinNumericError):
    pass


class StepSizeError(MemkinNumericError):
    pass


class CoarseStepWarning(UserWarning):
    """Per-step switching probability is large enough to bias fixed-step results."""
