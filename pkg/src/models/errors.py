from typing import Optional


class CRDeckError(Exception):
    """Base class of every error raised by the laboratory"""


class GraphInputError(CRDeckError, ValueError):
    """Invalid vertex index, adjacency or order"""


class OrderOverflowError(GraphInputError):
    """The 64-vertex cap was exceeded"""

    def __init__(self, order: int, limit: int = 64) -> None:
        super().__init__(f"Order {order} exceeds the vertex cap of {limit}")
        self.order = order
        self.limit = limit


class GraphDomainError(CRDeckError, ValueError):
    """An operation was called outside its domain"""


class GraphFormatError(CRDeckError, ValueError):
    """Parse or emit failure in one of the interchange formats"""

    def __init__(self, message: str, offset: int = 0, line: Optional[int] = None) -> None:
        self.message = message
        self.offset = offset
        self.line = line
        location = f"byte {offset}" if line is None else f"line {line}, byte {offset}"
        super().__init__(f"{message} ({location})")

    def at_line(self, line: int) -> 'GraphFormatError':
        return GraphFormatError(self.message, self.offset, line)


class ResourceGuardError(CRDeckError, RuntimeError):
    """An unfolding grew past the node guard"""

    def __init__(self, depth: int, limit: int) -> None:
        super().__init__(f"Unfolding exceeded {limit} nodes at depth {depth}")
        self.depth = depth
        self.limit = limit


class IntegrityError(CRDeckError, RuntimeError):
    """Digest and exact modes disagree, or a proven property failed"""


class CorpusError(CRDeckError):
    """Missing, empty or inconsistent corpus"""


class UsageError(CRDeckError):
    """Missing or inconsistent command-line arguments"""
