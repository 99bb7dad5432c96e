"""Exception hierarchy."""


class PiflatError(Exception):
    """Base class for all errors raised by piflat."""


class DivisionByZero(PiflatError, ZeroDivisionError):
    pass


class ModeError(PiflatError):
    """Time-varying coefficients combined with two or more delays."""


class ModeMismatch(PiflatError):
    """Operands built over different ring contexts."""


class UnsupportedMode(PiflatError):
    """Operation not available in the current ring mode."""


class DimensionMismatch(PiflatError, ValueError):
    pass


class IndexOutOfRange(PiflatError, IndexError):
    pass


class ZeroScale(PiflatError, ValueError):
    pass


class NotHyperRegular(PiflatError):
    """B or F fails hyper-regularity; ``witness`` explains why."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"{witness.source} is not hyper-regular: {witness.describe()}")


class ParseError(PiflatError, SyntaxError):
    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        detail = f"{message} at position {pos}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class UndeclaredIdentifier(PiflatError, NameError):
    def __init__(self, name, pos=0):
        super().__init__(f"undeclared identifier {name!r} at position {pos}")
        # set after NameError.__init__, which resets .name
        self.name = name
        self.pos = pos
