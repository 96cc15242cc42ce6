"""Exception hierarchy.

Every error raised by the library derives from :class:`TiltwallError`.  The
CLI maps the four families below onto its exit codes.
"""


class TiltwallError(Exception):
    """Base class for all library errors."""


class InputError(TiltwallError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 1)."""


class LimitsExceeded(TiltwallError):
    """An enumeration would need boxes larger than the configured limits (exit 2)."""


class ModelAssumption(TiltwallError):
    """The threefold model violates a standing assumption (exit 3)."""


class AdmissibilityFailure(TiltwallError):
    """The conservative n0 checklist rejected the requested twist (exit 4)."""


# threefold
class ZeroClass(InputError):
    pass


class NonIntegerEuler(InputError):
    pass


class NonIntegralClass(InputError):
    pass


# plane
class RankZero(InputError):
    pass


class ChOneZero(InputError):
    pass


class CoincidentPoints(InputError):
    pass


class NoIntersection(InputError):
    pass


class VerticalLine(InputError):
    pass


class IrrationalLine(InputError):
    """A requested line has an irrational slope and cannot be stored with rational coefficients."""


# stability
class NotInU(InputError):
    pass


class DegenerateBG(InputError):
    pass


# walls
class UnboundedSearch(LimitsExceeded):
    pass


class InconsistentDecomposition(InputError):
    pass


class OutOfRange(InputError):
    pass


class NegativeDiscriminant(InputError):
    pass


class DegenerateClass(InputError):
    pass


class NotAdmissible(AdmissibilityFailure):
    pass


# dimension one
class InvalidTriple(InputError):
    pass


class NonPositiveC(InputError):
    pass


# wcf
class NotBaseCase(InputError):
    pass


class NonMinusOneRank(InputError):
    pass


class SlopeMismatch(InputError):
    pass


class NotCalabiYau(ModelAssumption):
    pass
