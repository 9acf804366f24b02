"""Exception hierarchy shared by every layer of the toolkit."""


class GbsynthError(Exception):
    """Base class for all errors raised by gbsynth."""


class DimensionMismatch(GbsynthError, ValueError):
    """Operands live in different polynomial rings."""


class ZeroPolynomialError(GbsynthError, ValueError):
    """An operation that needs a nonzero polynomial received 0."""


class ExponentOverflow(GbsynthError, ArithmeticError):
    """A monomial exponent left its fixed-width field."""


class UndeclaredVariable(GbsynthError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"undeclared variable {self.name!r}"


class MissingAssignment(GbsynthError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no value assigned to variable {self.name!r}"


class ResourceLimit(GbsynthError):
    """A configured cap on basis size or polynomial length was exceeded."""


class EnumerationCapExceeded(GbsynthError):
    """Exhaustive enumeration was asked to cover more points than allowed."""


class CoprimalityViolation(GbsynthError):
    """Two row ideals share a zero, so their product is not the vanishing ideal."""

    def __init__(self, message, rows=None, assignment=None):
        super().__init__(message)
        self.rows = rows
        self.assignment = assignment


class NoForm(GbsynthError):
    """The eliminated basis has no element whose leading term is the output."""


class AmbiguousForm(GbsynthError):
    """More than one candidate form; impossible for a reduced basis."""


class ParseError(GbsynthError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message
