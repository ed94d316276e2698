"""Exception hierarchy shared by every tsreduce module."""


class TsReduceError(Exception):
    """Base class for all errors raised by tsreduce."""


class ContractError(TsReduceError, ValueError):
    """A precondition or type invariant was violated by the caller."""


class FormatError(ContractError):
    """Input text does not follow the UCR layout."""

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


class EmptyDatasetError(FormatError):
    """The input contained no series at all."""


class InvariantError(TsReduceError, AssertionError):
    """An internal runtime check failed; results cannot be trusted."""
