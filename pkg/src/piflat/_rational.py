"""Arbitrary-precision rational coefficient type (gmpy2 when available)."""
from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction

ZERO = QQ(0)
ONE = QQ(1)


def to_qq(x):
    """Convert an int, Fraction, or rational string to the coefficient type."""
    if isinstance(x, QQ):
        return x
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    return QQ(x)


def as_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))
