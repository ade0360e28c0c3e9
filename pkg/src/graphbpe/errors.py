"""Exception hierarchy.

Structural misuse of the graph API raises subclasses of :class:`GraphError`
(also ``ValueError``). Problems with external data (files, SMILES strings,
serialized documents) raise subclasses of :class:`DataError` and carry an
optional source location.
"""

from __future__ import annotations


class GraphBPEError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(GraphBPEError, ValueError):
    pass


class EndpointOutOfRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class LengthMismatchError(GraphError):
    pass


class OverlappingGroupsError(GraphError):
    pass


class GroupTooSmallError(GraphError):
    pass


class GroupNotConnectedError(GraphError):
    pass


class IndexOutOfRangeError(GraphError, IndexError):
    pass


class EmptySetError(GraphError):
    pass


class NotAnEdgeError(GraphError):
    pass


class DataError(GraphBPEError):
    """Malformed or unsupported input data.

    ``path`` and ``line`` locate the problem when it came from a file.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = ""
        if self.path is not None:
            where = str(self.path)
            if self.line is not None:
                where += f":{self.line}"
            where += ": "
        return f"{where}{self.message}"


class MissingFileError(DataError):
    pass


class MalformedLineError(DataError):
    pass


class DanglingEdgeError(DataError):
    pass


class CrossGraphEdgeError(DataError):
    pass


class SmilesError(DataError):
    """Base for SMILES parse failures; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int | None = None, **kw):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message, **kw)


class UnmatchedRingClosureError(SmilesError):
    pass


class UnbalancedParenthesisError(SmilesError):
    pass


class UnknownAtomSymbolError(SmilesError):
    pass


class EmptyInputError(SmilesError):
    pass


class SchemaViolationError(DataError):
    pass


class VersionMismatchError(DataError):
    pass
