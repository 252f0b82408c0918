"""Exception hierarchy for trapfun."""


class TrapfunError(Exception):
    """Base class for all trapfun errors."""


class DomainError(TrapfunError, ValueError):
    """An argument violates an operation's precondition."""


class TermCapExceeded(TrapfunError, RuntimeError):
    """A tail of the lattice sum hit max_terms_per_side before truncating."""


class NonFiniteTerm(TrapfunError, ArithmeticError):
    """The integrand returned inf or nan at a mesh node."""


class AccuracyError(TrapfunError, ArithmeticError):
    """A computed result failed its internal consistency bound."""


class PoleError(TrapfunError, ZeroDivisionError):
    """Gamma requested at (or numerically indistinguishable from) a pole."""


class OverflowGuard(TrapfunError, OverflowError):
    """A node exponent or final value left the representable range."""
