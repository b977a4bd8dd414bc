class DenjoyError(ValueError):
    """Base class for domain errors raised by this package."""


class EmptySetError(DenjoyError):
    pass


class FullCircleError(DenjoyError):
    pass


class NotInBError(DenjoyError):
    """An orbit point landed on the frontier of the open set."""


class LengthMismatchError(DenjoyError):
    pass


class RationalRotationError(DenjoyError):
    pass


class EmptyGammaError(DenjoyError):
    pass


class AllZeroBlockError(DenjoyError):
    pass
