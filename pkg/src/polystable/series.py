"""Finite sums ``sum q_e t^e`` with rational ``q_e`` and ``e``: an exact valued field model.

The valuation is the least exponent with a nonzero coefficient (``INF`` for 0),
so the value group is the rationals and the residue field has characteristic 0.
"""

from fractions import Fraction

from .extended import INF, fmt_q, q


class Coeff:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for e, c in dict(terms or {}).items():
            c = Fraction(c)
            if c:
                e = Fraction(e)
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e):
        return cls({e: c})

    def val(self):
        return self.terms[0][0] if self.terms else INF

    def lead(self):
        return self.terms[0][1] if self.terms else Fraction(0)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, Coeff):
            return other
        return Coeff.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Coeff(d)

    __radd__ = __add__

    def __neg__(self):
        return Coeff({e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return Coeff(d)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Coeff.const(1)
        for _ in range(int(k)):
            out = out * self
        return out

    def truncate(self, u):
        """Drop every term of exponent ``>= u``."""
        if u is INF:
            return self
        return Coeff({e: c for e, c in self.terms if e < u})

    def __eq__(self, other):
        if not isinstance(other, Coeff):
            try:
                other = Coeff.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "Coeff(0)"
        return "Coeff(" + " + ".join(f"{c}*t^{e}" for e, c in self.terms) + ")"

    def to_json(self):
        return [[fmt_q(c), fmt_q(e)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (int, str)):
            return cls.const(q(data))
        return cls({q(e): q(c) for c, e in data})


ZERO = Coeff()
ONE = Coeff.const(1)


def t_power(e):
    return Coeff.monomial(1, e)
