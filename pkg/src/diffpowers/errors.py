"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI and the
report layer can surface failures without parsing messages.
"""

from __future__ import annotations


class AlgebraError(Exception):
    code = "ENGINE_ERROR"


class RingMismatchError(AlgebraError):
    code = "RING_MISMATCH"


class NonExactDivisionError(AlgebraError, ArithmeticError):
    code = "NON_EXACT_DIVISION"


class ZeroPolynomialError(AlgebraError, ValueError):
    code = "ZERO_POLY"


class ParseError(AlgebraError, ValueError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, position: int = 0, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class BudgetExceededError(AlgebraError):
    code = "BUDGET_EXCEEDED"


class InconclusiveError(AlgebraError):
    code = "INCONCLUSIVE"


class PNotInIdealError(AlgebraError, ValueError):
    code = "P_NOT_IN_IDEAL"


class NotInSummandError(AlgebraError, ValueError):
    code = "X_NOT_IN_SUMMAND"


class ReynoldsNotDefinedError(AlgebraError):
    code = "REYNOLDS_NOT_DEFINED"


class GeneratorBoundExceededError(AlgebraError):
    code = "GENERATOR_BOUND_EXCEEDED"


class WitnessInPrimeError(AlgebraError, ValueError):
    code = "WITNESS_IN_PRIME"


class MixedPowerUnavailableError(AlgebraError):
    code = "MIXED_POWER_UNAVAILABLE"


class PreconditionError(AlgebraError, ValueError):
    code = "PRECONDITION"


class ConfigError(AlgebraError):
    code = "CONFIG_ERROR"

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append(f"key {key!r}")
        if line is not None:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
