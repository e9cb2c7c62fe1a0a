"""Exception hierarchy shared by every analysis module.

The CLI maps these onto exit codes: InvalidInput -> 2, ResourceLimit -> 3.
"""


class AnalysisError(Exception):
    """Base class for all errors raised by the library."""


class InvalidInput(AnalysisError, ValueError):
    pass


class NotInStar(InvalidInput):
    """A word has no factorization over the given code."""


class NotApplicable(AnalysisError):
    """An operation's hypothesis (e.g. primitivity) does not hold for the input."""


class ResourceLimit(AnalysisError):
    """A configured size cap or window bound was exceeded.

    ``partial`` carries whatever was computed before the limit hit, and
    ``required`` (when known) the bound that would have sufficed.
    """

    def __init__(self, message, partial=None, required=None):
        super().__init__(message)
        self.partial = partial
        self.required = required
