"""
Exception hierarchy shared by every module, with stable codes for the JSON error stream.
"""


class LinearLikeError(Exception):
    """Base class; code is stable and exit_code is what the CLI returns"""

    code = "INTERNAL"
    exit_code = 1

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def to_dict(self):
        payload = {"error": self.code, "message": self.message}
        payload.update({key: _plain(value) for key, value in self.details.items()})
        return payload


def _plain(value):
    # details may carry AlgReal or Fraction values
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


class InputError(LinearLikeError):
    code = "INPUT_ERROR"
    exit_code = 2


class ExpressionSyntaxError(InputError):
    code = "SYNTAX_ERROR"

    def __init__(self, message, position, expected):
        super().__init__(message, position=position, expected=expected)
        self.position = position
        self.expected = expected


class NonPolynomialError(InputError):
    code = "NON_POLYNOMIAL"


class NotLinearInYError(InputError):
    code = "NOT_LINEAR_IN_Y"


class DegreeLimitError(InputError):
    code = "DEGREE_LIMIT"


class SubmersionError(InputError):
    code = "NOT_A_SUBMERSION"

    def __init__(self, message, root):
        super().__init__(message, root=root)
        self.root = root


class SimpleZeroError(SubmersionError):
    code = "SIMPLE_ZERO"


class CriticalValueOnFiberError(SubmersionError):
    code = "CRITICAL_VALUE_ON_FIBER"


class OutOfScopeError(InputError):
    code = "OUT_OF_SCOPE"


class EmptyViewportError(InputError):
    code = "EMPTY_VIEWPORT"


class PreconditionViolated(InputError):
    code = "PRECONDITION_VIOLATED"


class OracleScopeError(LinearLikeError):
    code = "ORACLE_SCOPE"
    exit_code = 3


class InvariantViolation(LinearLikeError):
    code = "INVARIANT_VIOLATION"


class ZeroPolynomialError(LinearLikeError):
    code = "ZERO_POLYNOMIAL"


class DivisionByZeroPolyError(LinearLikeError):
    code = "DIVISION_BY_ZERO_POLY"


class DegenerateChoiceError(LinearLikeError):
    code = "DEGENERATE_CHOICE"
