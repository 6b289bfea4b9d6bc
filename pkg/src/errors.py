class SasakiError(Exception):
    """Base class of every error raised by the invariant computations"""


class DomainError(SasakiError, ValueError):
    """A precondition of an operation is violated by its input"""


class IntegrityError(SasakiError, ArithmeticError):
    """An exactness or consistency check failed

    Seeing one of these means either the input broke a documented precondition
    that could not be checked up front, or two independent computations disagree.
    """


class ConfigError(DomainError):
    """The configuration file is missing, unreadable or malformed"""


class VerificationMismatch(SasakiError):
    def __init__(self, diff):
        """Raised when a replay of the published tables disagrees with the computation

        Args:
            diff (list of str): One line per mismatching entry
        """
        super().__init__(f"{len(diff)} mismatching entries")
        self.diff = list(diff)
