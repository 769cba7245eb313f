"""Exception hierarchy shared by all modules."""


class MatchingError(Exception):
    """Base class for every error raised by this package."""


class GraphError(MatchingError, ValueError):
    """Invalid graph construction input."""


class DuplicateEdge(GraphError):
    pass


class ZeroOrNegativeWeight(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class WeightOverflow(GraphError, OverflowError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HOutOfRange(MatchingError, ValueError):
    pass


class NotMaximumMatching(MatchingError):
    pass


class InfeasibleCover(MatchingError, ValueError):
    pass


class TooLarge(MatchingError, ValueError):
    pass


class InternalCheckFailed(MatchingError, AssertionError):
    """A duality or extraction postcondition was violated."""


class ExtractionStuck(InternalCheckFailed):
    pass
