"""Exception hierarchy shared by every module."""


class MudError(Exception):
    """Base class for evaluation and construction errors."""


class EmptyInput(MudError):
    pass


class LeafMismatch(MudError):
    pass


class BadSize(MudError):
    pass


class BadLength(MudError):
    pass


class BadEpsilon(MudError):
    pass


class IndexOutOfRange(MudError):
    pass


class UnknownState(MudError):
    pass


class TooLarge(MudError):
    pass


class LengthMismatch(MudError):
    pass


class WidthOverflow(MudError):
    """A value does not fit the width declared by its state schema."""


class PromiseViolation(MudError):
    pass


class MalformedInstance(MudError):
    pass


class NoWitness(MudError):
    """No merged state exists for the given annotated states.

    ``node`` is filled in by the tree evaluator with the id of the internal
    node whose aggregation failed.
    """

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class ParseError(MudError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
