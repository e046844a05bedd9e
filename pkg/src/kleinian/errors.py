"""Exception types shared across the kernel modules."""


class KleinianError(Exception):
    """Base class for all library errors."""


class ParamMismatch(KleinianError):
    """Operands live over different algebra parameters (or modes)."""


class InvalidGenerator(KleinianError):
    """Generator is not valid for the given parameter (shape/reflectivity)."""


class NonNilpotent(KleinianError):
    """exp(ad) series failed to truncate; signals a kernel bug."""


class NotDivisibleByT(KleinianError):
    """A commutator was not divisible by t; signals a kernel bug."""


class ShapeMismatch(KleinianError):
    """Word does not match a closed-form multidegree shape."""


class NotApplicable(KleinianError):
    """Operation undefined for this n (e.g. n=2 group structure, T for n!=4)."""


class ZeroScalar(KleinianError):
    """A scalar that must be invertible was zero."""


class FamilyMismatch(KleinianError):
    """Scaling-family constraint on gamma violated."""


class InconsistentSystem(KleinianError):
    """Exact linear system had no solution; signals a kernel bug."""


class RewriteError(KleinianError):
    """Straightening loop exceeded its termination bound; fatal diagnostic."""


class ExprSyntaxError(KleinianError):
    """Expression text failed to parse."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class UnknownVariable(KleinianError):
    """Variable not available in the current session algebra."""


class UsageError(KleinianError):
    """Bad command-line usage."""
