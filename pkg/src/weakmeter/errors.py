"""Exception taxonomy. Each error carries the CLI exit code it maps to."""


class WeakMeterError(ValueError):
    exit_code = 1


class InvalidRatio(WeakMeterError):
    exit_code = 3


class InvalidState(WeakMeterError):
    exit_code = 3


class GridTooNarrow(WeakMeterError):
    exit_code = 4


class BlockedTransition(WeakMeterError):
    """Post-selection probability is (numerically) zero."""

    exit_code = 5


class OrthogonalSelection(WeakMeterError):
    """Weak value undefined: the pre/post overlap vanishes."""

    exit_code = 6


class SingularTarget(WeakMeterError):
    exit_code = 7


class WeightsNotNormalized(WeakMeterError):
    exit_code = 8


class NoPostSelectedEvents(WeakMeterError):
    exit_code = 9


class ZeroLambda(WeakMeterError):
    exit_code = 10


class AcceptanceTooLow(WeakMeterError):
    exit_code = 11
