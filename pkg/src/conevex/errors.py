"""Exception types raised by conevex."""


class ConevexError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(ConevexError, ValueError):
    pass


class ZeroGenerator(ConevexError, ValueError):
    pass


class NotFullDimensional(ConevexError, ValueError):
    pass


class UnknownLabel(ConevexError, KeyError):
    def __str__(self):
        return f"unknown label {self.args[0]!r}" if self.args else "unknown label"


class AlphaOutOfRange(ConevexError, ValueError):
    pass


class EmptyFeasibleSet(ConevexError):
    pass


class InfeasibleLabel(ConevexError, ValueError):
    pass


class ZeroFunctional(ConevexError, ValueError):
    pass


class InvalidMultipliers(ConevexError, ValueError):
    pass


class NonPositiveOperator(ConevexError, ValueError):
    pass


class NotInterior(ConevexError, ValueError):
    pass


class NotNormalized(ConevexError, ValueError):
    pass


class NotWeaklyEfficient(ConevexError):
    pass


class HypothesisViolation(ConevexError):
    pass


class ValidationError(ConevexError, ValueError):
    pass


class ParseError(ConevexError, ValueError):
    """Malformed instance text. ``position`` is a character offset or a JSON path."""

    def __init__(self, position, reason):
        super().__init__(f"{position}: {reason}")
        self.position = position
        self.reason = reason


class GenerationExhausted(ConevexError):
    pass


class OracleDisagreement(ConevexError):
    def __init__(self, check, detail, instance_text=None):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail
        self.instance_text = instance_text
