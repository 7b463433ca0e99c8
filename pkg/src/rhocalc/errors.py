"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`RhoCalcError`,
so callers (the CLI in particular) can tell modelling failures apart from bugs.
"""


class RhoCalcError(Exception):
    pass


class ExponentError(RhoCalcError, ValueError):
    """A rational exponent whose reduced denominator exceeds the allowed bound."""


class NullDivision(RhoCalcError, ZeroDivisionError):
    """Division by a number with no stored terms, i.e. by a null number."""


class NotPositive(RhoCalcError, ValueError):
    """Square root requested outside the positive cone."""


class NotModerate(RhoCalcError, ArithmeticError):
    """A value exceeds every power s^-n (e.g. exp of a positive infinitely large number)."""


class NotRepresentable(RhoCalcError, ArithmeticError):
    """A moderate value exists but is not a Levi-Civita series (e.g. sin(1/s), log(1/s))."""


class DomainError(RhoCalcError, ValueError):
    """A primitive is applied at a standard part outside its real domain."""


class OutsideDomain(RhoCalcError, ValueError):
    """A standard point (or a segment) is not inside the open set Omega."""


class NotInfinitesimal(RhoCalcError, ValueError):
    """An offset meant to be infinitesimal has a coordinate of valuation <= 0."""


class NotConnected(RhoCalcError, ValueError):
    """Scalar detection requires an arcwise connected domain."""


class UnboundVariable(RhoCalcError, NameError):
    pass


class DSLSyntaxError(RhoCalcError, SyntaxError):
    """Parse error carrying a 1-based line and column."""

    def __init__(self, message, line=1, column=1, source=""):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg_text = message
        self.line = line
        self.column = column
        self.source = source
