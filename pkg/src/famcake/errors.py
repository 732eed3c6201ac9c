"""Exception hierarchy shared by every module."""


class FamcakeError(Exception):
    pass


class DomainError(FamcakeError, ValueError):
    """A coordinate or interval lies outside the unit cake."""


class InfeasibleTargetError(FamcakeError, ValueError):
    """A mark was requested for more value than remains."""


class MalformedPieceError(FamcakeError, ValueError):
    pass


class MeasureError(FamcakeError, ValueError):
    pass


class InstanceError(FamcakeError, ValueError):
    pass


class UnsupportedCombinationError(FamcakeError, ValueError):
    """A protocol was asked to run outside the regime it is sound for."""


class SearchLimitExceeded(FamcakeError, RuntimeError):
    """Exhaustive search visited more nodes than allowed."""
