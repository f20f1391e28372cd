"""Exception types shared across the package."""


class PerfectLikeError(Exception):
    pass


class ParameterError(PerfectLikeError, ValueError):
    """Invalid or inconsistent parameters (alphabet, length, sizes, ranges)."""


class EmptyCodeError(PerfectLikeError, ValueError):
    pass


class UndefinedDistanceError(PerfectLikeError, ValueError):
    """Minimum distance requested for a code with fewer than two words."""


class EnumerationRequired(PerfectLikeError):
    """The operation needs an explicit word list but got a membership oracle."""


class BudgetExceeded(EnumerationRequired):
    """The ambient space is larger than the configured vertex budget."""


class SemanticsError(PerfectLikeError, ValueError):
    """E.g. a multiset passed where an ordinary set is required."""


class ParseError(PerfectLikeError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class OverlapError(ParseError):
    pass
