"""Exception hierarchy shared by every gale module."""


class GaleError(Exception):
    """Base class for all gale errors."""


class DomainError(GaleError, ValueError):
    """An input lies outside the mathematical domain of a formula."""


class ConfigurationError(GaleError, ValueError):
    """A model, grid or run configuration is incomplete or inconsistent."""


class ConvergenceError(GaleError, ArithmeticError):
    """An iterative solve did not converge.

    Attributes
    ----------
    history : list of float
        Every iterate produced before giving up, starting with the initial guess.
    """

    def __init__(self, message, history=()):
        super().__init__(message)
        self.history = list(history)


class DivergenceError(ConvergenceError):
    """An iterate left the region where the fixed-point map is defined."""


class OutOfBandWarning(UserWarning):
    """A spectrum was evaluated outside its validated frequency band."""
