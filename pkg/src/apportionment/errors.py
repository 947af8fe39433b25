"""Exception hierarchy shared by every module of the package."""


class ApportionmentError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ApportionmentError, ValueError):
    """Invalid input data. ``field`` names the offending field when known."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class EmptyInput(InputError):
    pass


class ZeroTotalVotes(InputError):
    pass


class NonPositiveSeats(InputError):
    pass


class DuplicateName(InputError):
    pass


class LengthMismatch(InputError):
    pass


class MalformedDecimal(InputError):
    pass


class QuotaSumMismatch(InputError):
    def __init__(self, total, seats):
        super().__init__(f'quotas sum to {total}, expected {seats}', field='quotas')
        self.total = total
        self.seats = seats


class RhoOutOfRange(InputError):
    pass


class InvalidPartition(InputError):
    pass


class NonMonotoneIncrements(InputError):
    pass


class UnknownMethod(InputError):
    pass


class TooManyPartiesForAdamsLike(ApportionmentError):
    pass


class InsufficientSeats(ApportionmentError):
    pass


class NotMinimal(ApportionmentError):
    pass


class InstanceTooLarge(ApportionmentError):
    pass


class TieUnderErrorPolicy(ApportionmentError):
    """A selection boundary tie was hit while the tie policy forbids guessing.

    ``candidates`` holds the tied seat vectors when they were enumerable.
    """

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = candidates


class ScenarioMismatch(ApportionmentError):
    def __init__(self, diffs):
        lines = '\n'.join(diffs)
        super().__init__(f'{len(diffs)} scenario check(s) failed:\n{lines}')
        self.diffs = list(diffs)
