"""Exception types shared across the package."""


class OrdepError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(OrdepError):
    """Invalid schema definition or attribute lookup failure."""


class ParseError(OrdepError):
    """A cell or row of the input could not be parsed.

    Carries the 1-based row number and the column name so callers can
    point at the offending cell.
    """

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = ""
        if row is not None:
            where += f" at row {row}"
        if column is not None:
            where += f" column {column!r}"
        super().__init__(f"{message}{where}")


class ODSyntaxError(OrdepError):
    """Malformed or trivial dependency text."""


class BudgetExceededError(OrdepError):
    """A brute-force run exceeded its configured check budget."""
