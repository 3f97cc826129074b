"""Exception hierarchy. Every error carries a machine-readable ``kind``."""


class SkewDetError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class InvalidDescriptor(SkewDetError, ValueError):
    pass


class DivisionByZero(SkewDetError, ZeroDivisionError):
    pass


class DivisionByZeroPoly(DivisionByZero):
    pass


class MixedDescriptors(SkewDetError, ValueError):
    pass


class MixedContexts(SkewDetError, ValueError):
    pass


class SizeMismatch(SkewDetError, ValueError):
    pass


class ParseError(SkewDetError, ValueError):
    def __init__(self, message: str, position: int = 0, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class NotAUnit(SkewDetError, ValueError):
    pass


class NotCommutative(SkewDetError, ValueError):
    pass


class WrongTwist(SkewDetError, ValueError):
    pass


class InfiniteDegDet(SkewDetError, ValueError):
    pass


class DegreeZero(SkewDetError, ValueError):
    pass


class OracleMismatch(SkewDetError, RuntimeError):
    pass


class PropertyFailure(SkewDetError, AssertionError):
    pass
