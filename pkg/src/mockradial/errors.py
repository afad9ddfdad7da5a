"""Exception types shared across the library."""


class MockRadialError(Exception):
    """Base class for all library errors."""


class DomainError(MockRadialError):
    """Input outside the mathematical domain of the operation (|q| >= 1, x = 0, ...)."""


class DivisionByZero(MockRadialError):
    """Exact division by a zero field element."""


class OrderMismatch(MockRadialError):
    """Cyclotomic promotion to a non-multiple order."""


class OrderCapExceeded(MockRadialError):
    """Requested cyclotomic order exceeds the configured cap."""


class NearSingular(MockRadialError):
    """A numeric denominator fell below the working threshold; raise precision."""


class CaseMismatch(MockRadialError):
    """A limit formula was invoked on a cusp with the wrong case label."""


class InvalidParams(MockRadialError):
    """Specialization parameters violate their invariants."""


class UnsupportedCase(MockRadialError):
    """No supported limit formula for this (params, cusp) pair."""


class PrecisionExhausted(MockRadialError):
    """Adaptive precision hit its cap without a stable result."""


class HypothesisViolated(MockRadialError):
    """An identity's hypothesis fails for the supplied point."""
