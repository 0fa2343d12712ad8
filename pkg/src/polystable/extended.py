"""Extended non-negative rationals: exact ``Fraction`` values plus a symbol ``INF``.

Conventions: ``0 * INF == 0``, ``a * INF == INF`` for ``a != 0`` and a sum is
``INF`` as soon as one summand is.
"""

from fractions import Fraction
from functools import total_ordering


@total_ordering
class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("polystable.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        return Fraction(0) if other == 0 else self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x):
    return x is INF


def q(value):
    """Coerce ints, Fractions, strings ("p/q", "inf") to an exact value."""
    if value is INF:
        return INF
    if isinstance(value, str):
        return parse_q(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(value)


def parse_q(text):
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return INF
    return Fraction(text)


def fmt_q(value):
    """Canonical string: ``"inf"``, ``"p"`` or ``"p/q"`` in lowest terms."""
    if value is INF:
        return "inf"
    return str(Fraction(value))


def ext_add(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def ext_mul(a, b):
    if a == 0 or b == 0:
        return Fraction(0)
    if a is INF or b is INF:
        return INF
    return a * b


def ext_sum(values):
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def ext_sub(a, b):
    """``a - b`` for finite ``b``; ``INF - b`` stays ``INF``."""
    if b is INF:
        raise ValueError("cannot subtract INF")
    if a is INF:
        return INF
    return a - b
