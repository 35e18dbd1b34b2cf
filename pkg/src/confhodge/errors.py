"""Exception types shared across the package."""


class ConfHodgeError(Exception):
    """Base class for all package errors."""


class ParseError(ConfHodgeError):
    """Malformed input document or graph spec."""


class ValidationError(ConfHodgeError):
    """Algebra data violates a structural invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class AlgebraMismatchError(ConfHodgeError):
    """Operands belong to different algebras or tensor powers."""


class DegeneratePairingError(ConfHodgeError):
    """Poincare pairing is singular; the diagonal class is undefined."""


class CompositionError(ConfHodgeError):
    """Two-term composition d_out . d_in is nonzero; signals a sign bug upstream."""


class ConsistencyError(ConfHodgeError):
    """An exact self-check failed (delta^2 != 0, ill-defined induced differential, ...)."""


class ScopeError(ConfHodgeError):
    """Request outside the supported scope (e.g. E2-model route on a partial graph)."""
