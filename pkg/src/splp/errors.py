"""Exception types shared across the library."""


class InvalidInput(ValueError):
    """A caller-supplied argument violates a documented precondition."""


class ConvergenceFailure(RuntimeError):
    """An iterative routine ran out of iterations.

    Carries the best residual (or gap) seen so the caller can decide
    whether the partial answer is usable.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(ValueError):
    """An input file does not conform to its documented format."""
