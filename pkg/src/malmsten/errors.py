"""Exception hierarchy shared across the package."""


class MalmstenError(Exception):
    """Base class for all package errors."""


class DomainError(MalmstenError, ValueError):
    """Argument outside the supported domain (bad parameter, endpoint evaluation, pole)."""


class PrecisionFailure(MalmstenError):
    """A numerical procedure did not reach the requested accuracy.

    ``best`` carries the best available estimate when there is one.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class DivergenceError(MalmstenError):
    """The integral does not exist (non-integrable endpoint behaviour)."""


class InsufficientPrecisionError(MalmstenError):
    """The input precision is too low for the requested reconstruction or search."""


class UnknownIdError(MalmstenError, KeyError):
    """An identity, kernel or constant id does not resolve."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown id"
