"""Exception hierarchy shared by every module of the package."""


class NerodeError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(NerodeError, ValueError):
    """A symbol or sequence does not belong to the expected alphabet."""


class ValidationError(NerodeError, ValueError):
    """A domain object violates one or more of its invariants.

    All violations are collected in ``violations`` rather than stopping at
    the first one.
    """

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            message = "; ".join(self.violations) or "invalid object"
        super().__init__(message)


class CapacityError(NerodeError):
    """The requested construction would enumerate too many states."""


class PreconditionError(NerodeError):
    """An operation's precondition does not hold.

    When the failure comes from two inequivalent machines, ``counterexample``
    holds a shortest distinguishing input word.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class OrderUndeterminedError(NerodeError):
    """The Hankel rank has not saturated for the supplied Markov data."""


class ParseError(NerodeError, ValueError):
    """An input file could not be turned into a valid domain object."""

    def __init__(self, message, violations=(), location=None):
        self.violations = list(violations)
        self.location = location
        text = message
        if location:
            text = f"{location}: {text}"
        if self.violations:
            text += "\n  " + "\n  ".join(self.violations)
        super().__init__(text)
