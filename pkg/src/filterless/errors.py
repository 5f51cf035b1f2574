"""Exception hierarchy shared by every module."""


class FilterlessError(Exception):
    """Base class for all errors raised by this package."""


# -- trees -----------------------------------------------------------------

class TreeError(FilterlessError, ValueError):
    pass


class DisconnectedTree(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class SelfLoop(TreeError):
    pass


class WrongEdgeCount(TreeError):
    pass


class VertexOutOfRange(TreeError, IndexError):
    pass


# -- requests and instances ------------------------------------------------

class InvalidRequest(FilterlessError, ValueError):
    pass


class EmptyRequestSet(FilterlessError, ValueError):
    pass


class EmptyInstance(FilterlessError, ValueError):
    pass


class NotConverging(FilterlessError, ValueError):
    pass


class NotDiverging(FilterlessError, ValueError):
    pass


class NotUnimodal(FilterlessError, ValueError):
    pass


class NotNicePair(FilterlessError, ValueError):
    pass


class ReductionRequired(FilterlessError, ValueError):
    pass


class PartitionNotCliques(FilterlessError, ValueError):
    pass


class BudgetTooSmall(FilterlessError, ValueError):
    pass


class TooLarge(FilterlessError, ValueError):
    pass


class InternalContradiction(FilterlessError, RuntimeError):
    """A structural guarantee failed at runtime; indicates a bug."""


# -- file format / CLI -----------------------------------------------------

class ParseError(FilterlessError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CountMismatch(ParseError):
    pass


class InvalidVertex(ParseError):
    pass


class ZeroLengthRequest(ParseError):
    pass


class BadParams(FilterlessError, ValueError):
    pass
