"""Exception hierarchy shared by the library and the command line."""


class DipalignError(Exception):
    """Base class for every error raised by this package."""


class InputError(DipalignError, ValueError):
    """Malformed input: bad symbols, inconsistent lengths, unparsable files."""


class InstanceTooLarge(DipalignError):
    """An exhaustive routine refused to run past its size guard."""


class VerificationFailure(DipalignError):
    """A checked identity or bound did not hold."""


class NotASubsequence(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class LengthMismatch(InputError):
    pass


class EmptyString(InputError):
    pass


class EmptyAlignment(InputError):
    pass


class InvalidPath(InputError):
    pass


class NonUniqueSink(InputError):
    pass


class NonUniqueSource(InputError):
    pass


class NotCoverable(InputError):
    pass


class CoverViolated(VerificationFailure):
    pass


class DisjointnessViolated(VerificationFailure):
    pass


class ImpossibleParameters(InputError):
    pass


class RetriesExhausted(VerificationFailure):
    pass


class ParameterMismatch(InputError):
    pass


class NotCommonSubsequence(InputError):
    pass


class ConstructionMismatch(VerificationFailure):
    """An internal read identity of the reduction failed; indicates a construction bug."""


class NoCanonicalInterval(VerificationFailure):
    pass


class MissingColumnMetadata(InputError):
    pass
