"""Exception hierarchy.

``MathError`` subclasses signal a mathematical negative (the input is well
formed but, e.g., not integrable); the CLI maps them to exit code 1.
``UsageError`` subclasses signal malformed input and map to exit code 2.
"""


class NcadError(Exception):
    kind = "NcadError"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UsageError(NcadError):
    kind = "UsageError"


class MathError(NcadError):
    kind = "MathError"


class IndexOutOfRange(UsageError):
    kind = "IndexOutOfRange"


class ShapeMismatch(UsageError):
    kind = "ShapeMismatch"


class DimMismatch(UsageError):
    kind = "DimMismatch"


class OrderMismatch(UsageError):
    kind = "OrderMismatch"


class SlotOutOfRange(UsageError):
    kind = "SlotOutOfRange"


class ComponentOutOfRange(UsageError):
    kind = "ComponentOutOfRange"


class SchemaError(UsageError):
    kind = "SchemaError"


class SizeNotMultiple(UsageError):
    kind = "SizeNotMultiple"


class PreconditionFailure(MathError):
    kind = "PreconditionFailure"


class PostconditionFailure(MathError):
    kind = "PostconditionFailure"


class NotInner(MathError):
    kind = "NotInner"


class NotIntegrable(MathError):
    kind = "NotIntegrable"


class NotIntegrablePoly(MathError):
    kind = "NotIntegrablePoly"


class SingularMatrix(MathError):
    kind = "SingularMatrix"
