"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class UnsupportedParameter(ValueError):
    pass


class NotFound(LookupError):
    pass


class DegenerateInput(ValueError):
    pass


class NumericFailure(RuntimeError):
    """Raised when an iterative numerical routine does not converge.

    ``diagnostics`` carries whatever state helps reproduce the failure.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InternalError(ArithmeticError):
    pass
