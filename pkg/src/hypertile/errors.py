"""Exception hierarchy shared by all subpackages."""


class HypertileError(Exception):
    """Base class for library errors."""


class ParseError(HypertileError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(HypertileError):
    """Input is well-formed but violates a structural invariant."""


class NotConfluentError(HypertileError):
    """An operation needs a confluent rewriting system."""


class FiniteGroupError(HypertileError):
    """The acceptor language is finite, so there is no growth rate."""


class BudgetExceeded(HypertileError):
    """A search or completion ran out of budget before deciding."""

    def __init__(self, message, nodes=None):
        self.nodes = nodes
        super().__init__(message)


class ConsistencyError(HypertileError):
    """Labels or tilings fail a consistency check (integration, decoding, ...)."""


class MarginError(HypertileError):
    """A window is too small for the requested moves or horizon."""


class InfeasibleError(HypertileError):
    """Parameters admit no solution (e.g. population bound too small)."""
