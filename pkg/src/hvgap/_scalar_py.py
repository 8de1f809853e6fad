"""Pure-Python Gaussian rational kernel.

Selected at import when the compiled ``_scalar_cy`` extension is missing or
``HVGAP_PURE_PYTHON`` is set.  Keep behaviour identical to ``_scalar_cy.pyx``.
"""

from fractions import Fraction
from math import gcd

__all__ = ["GaussianRational", "axpy"]


def _reduce(n, d):
    if d < 0:
        n, d = -n, -d
    if n == 0:
        return 0, 1
    g = gcd(n, d)
    if g != 1:
        return n // g, d // g
    return n, d


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational._raw(x, 1, 0, 1)
    if isinstance(x, Fraction):
        return GaussianRational._raw(x.numerator, x.denominator, 0, 1)
    return NotImplemented


class GaussianRational:
    """Exact element of Q(i), stored as two reduced fractions."""

    __slots__ = ("rn", "rd", "in_", "id_", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        self.rn = re.numerator
        self.rd = re.denominator
        self.in_ = im.numerator
        self.id_ = im.denominator
        self._hash = None

    @classmethod
    def _raw(cls, rn, rd, in_, id_):
        # caller guarantees canonical form
        self = object.__new__(cls)
        self.rn = rn
        self.rd = rd
        self.in_ = in_
        self.id_ = id_
        self._hash = None
        return self

    @classmethod
    def from_parts(cls, rn, rd, in_, id_):
        rn, rd = _reduce(rn, rd)
        in_, id_ = _reduce(in_, id_)
        return cls._raw(rn, rd, in_, id_)

    @property
    def re(self):
        return Fraction(self.rn, self.rd)

    @property
    def im(self):
        return Fraction(self.in_, self.id_)

    def parts(self):
        return self.rn, self.rd, self.in_, self.id_

    def is_zero(self):
        return self.rn == 0 and self.in_ == 0

    def is_real(self):
        return self.in_ == 0

    def is_integer(self):
        return self.in_ == 0 and self.rd == 1

    def __bool__(self):
        return self.rn != 0 or self.in_ != 0

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.rd == 1 and o.rd == 1:
            rn, rd = self.rn + o.rn, 1
        else:
            rn, rd = _reduce(self.rn * o.rd + o.rn * self.rd, self.rd * o.rd)
        if self.in_ == 0:
            in_, id_ = o.in_, o.id_
        elif o.in_ == 0:
            in_, id_ = self.in_, self.id_
        elif self.id_ == 1 and o.id_ == 1:
            in_, id_ = self.in_ + o.in_, 1
            if in_ == 0:
                id_ = 1
        else:
            in_, id_ = _reduce(self.in_ * o.id_ + o.in_ * self.id_, self.id_ * o.id_)
        return GaussianRational._raw(rn, rd, in_, id_)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.rn, self.rd, -self.in_, self.id_)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.in_ == 0 and o.in_ == 0:
            if self.rd == 1 and o.rd == 1:
                return GaussianRational._raw(self.rn * o.rn, 1, 0, 1)
            rn, rd = _reduce(self.rn * o.rn, self.rd * o.rd)
            return GaussianRational._raw(rn, rd, 0, 1)
        # (a + bi)(c + di) over common denominators
        a, ad, b, bd = self.rn, self.rd, self.in_, self.id_
        c, cd, d, dd = o.rn, o.rd, o.in_, o.id_
        rn, rd = _reduce(a * c * bd * dd - b * d * ad * cd, ad * cd * bd * dd)
        in_, id_ = _reduce(a * d * bd * cd + b * c * ad * dd, ad * dd * bd * cd)
        return GaussianRational._raw(rn, rd, in_, id_)

    __rmul__ = __mul__

    def inverse(self):
        if self.rn == 0 and self.in_ == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        if self.in_ == 0:
            rn, rd = _reduce(self.rd, self.rn)
            return GaussianRational._raw(rn, rd, 0, 1)
        # 1/(x + yi) = (x - yi) / (x^2 + y^2)
        a, ad, b, bd = self.rn, self.rd, self.in_, self.id_
        norm_n = a * a * bd * bd + b * b * ad * ad
        norm_d = ad * ad * bd * bd
        rn, rd = _reduce(a * norm_d, ad * norm_n)
        in_, id_ = _reduce(-b * norm_d, bd * norm_n)
        return GaussianRational._raw(rn, rd, in_, id_)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = GaussianRational._raw(1, 1, 0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.rn, self.rd, -self.in_, self.id_)

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return (
            self.rn == o.rn and self.rd == o.rd and self.in_ == o.in_ and self.id_ == o.id_
        )

    def __ne__(self, other):
        r = self.__eq__(other)
        if r is NotImplemented:
            return r
        return not r

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.in_ == 0:
                h = hash(Fraction(self.rn, self.rd)) if self.rd != 1 else hash(self.rn)
            else:
                h = hash((self.rn, self.rd, self.in_, self.id_))
            self._hash = h
        return h

    def __reduce__(self):
        return (GaussianRational.from_parts, (self.rn, self.rd, self.in_, self.id_))

    def __repr__(self):
        return f"GaussianRational({self!s})"

    def __str__(self):
        s = str(self.rn) if self.rd == 1 else f"{self.rn}/{self.rd}"
        if self.in_ != 0:
            sign = "-" if self.in_ < 0 else "+"
            n = abs(self.in_)
            s += f"{sign}{n}i" if self.id_ == 1 else f"{sign}{n}/{self.id_}i"
        return s


def axpy(acc, src, coeff):
    """acc += coeff * src for sparse dicts, dropping cancelled keys."""
    for key, val in src.items():
        val = val * coeff
        old = acc.get(key)
        if old is None:
            if val:
                acc[key] = val
        else:
            new = old + val
            if new:
                acc[key] = new
            else:
                del acc[key]
    return acc
