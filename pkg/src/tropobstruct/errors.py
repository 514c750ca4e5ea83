"""Exception hierarchy.

Domain errors (bad curves, failed preconditions) derive from ``DomainError``;
input syntax problems derive from ``ParseError``. The CLI maps the first group
to exit code 1 and the second to exit code 2.
"""


class TropicError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"error": type(self).__name__, "message": self.message}
        for key in sorted(self.details):
            out[key] = self.details[key]
        return out


class DomainError(TropicError):
    """The input is well formed but mathematically rejected."""


class ParseError(TropicError):
    """The input document could not be parsed."""

    def __init__(self, message="", line=None, **details):
        super().__init__(message, line=line, **details)
        self.line = line


# exact_linalg
class ZeroVector(DomainError):
    pass


class NotASublattice(DomainError):
    pass


# curve_model
class Unbalanced(DomainError):
    pass


class Disconnected(DomainError):
    pass


class ContractedUnbounded(DomainError):
    pass


class NonRationalSlope(DomainError):
    pass


class DanglingReference(DomainError):
    pass


class InvalidCurve(DomainError):
    """Catch-all for structural problems (duplicate ids, bad weights, ranks)."""


class AssumptionAViolated(DomainError):
    pass


class NotTrivalent(DomainError):
    pass


# well_spacedness
class NotAPath(DomainError):
    pass


class ScopeError(DomainError):
    pass


class StratificationError(DomainError):
    pass


# kuranishi_leading
class NonIntegralOrder(DomainError):
    pass


class InvalidConfig(DomainError):
    pass


class NotWellSpaced(DomainError):
    pass


class DirectionsDoNotSpan(DomainError):
    pass


class NonPositiveModulus(DomainError):
    pass


# enumeration_index
class DegenerateDirection(DomainError):
    pass


class RankMismatch(DomainError):
    pass


class ConstraintMismatch(DomainError):
    pass


class NotGeneric(DomainError):
    """More than two closest vertices tie for one basis element."""
