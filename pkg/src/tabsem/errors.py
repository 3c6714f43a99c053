"""Exception hierarchy shared by every tabsem module."""


class TabsemError(Exception):
    """Base class for all errors raised by tabsem."""


class InvalidParameterError(TabsemError, ValueError):
    pass


class DomainError(TabsemError, ValueError):
    """An argument lies outside the domain a law or operation accepts."""


class IndeterminateFormError(TabsemError, ArithmeticError):
    """inf - inf or 0 * inf."""


class UnknownSemiringError(TabsemError, ValueError):
    pass


class MissingParameterError(TabsemError, ValueError):
    pass


class DuplicateIndexError(TabsemError, ValueError):
    pass


class MissingNeutralError(TabsemError, ValueError):
    pass


class UndefinedLetterError(TabsemError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidLetterError(TabsemError, ValueError):
    pass


class ResourceError(TabsemError):
    """Result would exceed the configured column budget."""


class BrokenPathError(TabsemError, ValueError):
    pass


class DimensionMismatchError(TabsemError, ValueError):
    pass


class NoConvergenceError(TabsemError):
    """Repeated squaring hit its iteration cap without reaching a fixed point."""


class NegativeWeightError(TabsemError, ValueError):
    pass


class DuplicateLabelError(TabsemError, ValueError):
    pass


class ParseError(TabsemError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
