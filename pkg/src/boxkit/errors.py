"""Exception types shared across boxkit."""


class BoxkitError(Exception):
    """Base class for all boxkit errors."""


class ParameterError(BoxkitError, ValueError):
    """Invalid arguments or violated preconditions."""


class FormulaNotApplicable(ParameterError):
    """A closed-form bound was requested outside its range of validity."""


class GraphFormatError(BoxkitError, ValueError):
    """Malformed serialized graph or cover.

    ``line`` and ``offset`` locate the problem in the input when known
    (1-based line, 1-based column).
    """

    def __init__(self, message, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f" (line {line}, column {offset})"
        super().__init__(message + where)


class BudgetExceeded(BoxkitError, RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""


class InconsistencyError(BoxkitError, RuntimeError):
    """Internal results contradict each other; indicates a bug."""
