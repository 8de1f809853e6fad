# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled Gaussian rational kernel; mirrors ``_scalar_py`` exactly."""

from fractions import Fraction
from math import gcd as _pygcd

from libc.limits cimport LLONG_MAX, LLONG_MIN
from cpython.long cimport PyLong_Check


cdef extern from *:
    """
    static inline int hv_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hv_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int hv_mul_ovf(long long a, long long b, long long *r) nogil
    int hv_add_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _cgcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef extern from "Python.h":
    long long PyLong_AsLongLongAndOverflow(object, int *) except? -1


cdef inline bint _as_ll(object x, long long *out):
    # True when x is an int that fits in a C long long
    cdef int ovf = 0
    if not PyLong_Check(x):
        return False
    out[0] = PyLong_AsLongLongAndOverflow(x, &ovf)
    return ovf == 0


cdef tuple _reduce(object n, object d):
    cdef long long cn, cd, g
    if d < 0:
        n = -n
        d = -d
    if n == 0:
        return (0, 1)
    if _as_ll(n, &cn) and _as_ll(d, &cd) and cn != LLONG_MIN:
        g = _cgcd(cn, cd)
        if g != 1:
            return (cn // g, cd // g)
        return (n, d)
    g2 = _pygcd(n, d)
    if g2 != 1:
        return (n // g2, d // g2)
    return (n, d)


cdef inline GaussianRational _make(object rn, object rd, object in_, object id_):
    cdef GaussianRational r = GaussianRational.__new__(GaussianRational)
    r.rn = rn
    r.rd = rd
    r.in_ = in_
    r.id_ = id_
    r._hash = None
    return r


cdef object _coerce(object x):
    if isinstance(x, GaussianRational):
        return x
    if PyLong_Check(x):
        return _make(int(x), 1, 0, 1)
    if isinstance(x, Fraction):
        return _make(x.numerator, x.denominator, 0, 1)
    return NotImplemented


cdef object _int_mul(object a, object b):
    cdef long long ca, cb, cr
    if _as_ll(a, &ca) and _as_ll(b, &cb):
        if not hv_mul_ovf(ca, cb, &cr):
            return cr
    return a * b


cdef object _int_add(object a, object b):
    cdef long long ca, cb, cr
    if _as_ll(a, &ca) and _as_ll(b, &cb):
        if not hv_add_ovf(ca, cb, &cr):
            return cr
    return a + b


cdef GaussianRational _add(GaussianRational s, GaussianRational o):
    cdef tuple t
    if s.rd == 1 and o.rd == 1:
        rn = _int_add(s.rn, o.rn)
        rd = 1
    else:
        t = _reduce(_int_add(_int_mul(s.rn, o.rd), _int_mul(o.rn, s.rd)), _int_mul(s.rd, o.rd))
        rn, rd = t
    if s.in_ == 0:
        in_ = o.in_
        id_ = o.id_
    elif o.in_ == 0:
        in_ = s.in_
        id_ = s.id_
    elif s.id_ == 1 and o.id_ == 1:
        in_ = _int_add(s.in_, o.in_)
        id_ = 1
    else:
        t = _reduce(_int_add(_int_mul(s.in_, o.id_), _int_mul(o.in_, s.id_)), _int_mul(s.id_, o.id_))
        in_, id_ = t
    return _make(rn, rd, in_, id_)


cdef GaussianRational _mul(GaussianRational s, GaussianRational o):
    cdef tuple t
    if s.in_ == 0 and o.in_ == 0:
        if s.rd == 1 and o.rd == 1:
            return _make(_int_mul(s.rn, o.rn), 1, 0, 1)
        t = _reduce(_int_mul(s.rn, o.rn), _int_mul(s.rd, o.rd))
        return _make(t[0], t[1], 0, 1)
    a, ad, b, bd = s.rn, s.rd, s.in_, s.id_
    c, cd, d, dd = o.rn, o.rd, o.in_, o.id_
    t = _reduce(a * c * bd * dd - b * d * ad * cd, ad * cd * bd * dd)
    u = _reduce(a * d * bd * cd + b * c * ad * dd, ad * dd * bd * cd)
    return _make(t[0], t[1], u[0], u[1])


cdef class GaussianRational:
    """Exact element of Q(i), stored as two reduced fractions."""

    cdef public object rn, rd, in_, id_
    cdef object _hash

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
        return _make(rn, rd, in_, id_)

    @classmethod
    def from_parts(cls, rn, rd, in_, id_):
        t = _reduce(rn, rd)
        u = _reduce(in_, id_)
        return _make(t[0], t[1], u[0], u[1])

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
        a = _coerce(self)
        b = _coerce(other)
        if a is NotImplemented or b is NotImplemented:
            return NotImplemented
        return _add(a, b)

    def __radd__(self, other):
        b = _coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _add(b, self)

    def __neg__(self):
        return _make(-self.rn, self.rd, -self.in_, self.id_)

    def __pos__(self):
        return self

    def __sub__(self, other):
        a = _coerce(self)
        b = _coerce(other)
        if a is NotImplemented or b is NotImplemented:
            return NotImplemented
        return _add(a, -b)

    def __rsub__(self, other):
        b = _coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _add(b, -self)

    def __mul__(self, other):
        a = _coerce(self)
        b = _coerce(other)
        if a is NotImplemented or b is NotImplemented:
            return NotImplemented
        return _mul(a, b)

    def __rmul__(self, other):
        b = _coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _mul(b, self)

    def inverse(self):
        if self.rn == 0 and self.in_ == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        if self.in_ == 0:
            t = _reduce(self.rd, self.rn)
            return _make(t[0], t[1], 0, 1)
        a, ad, b, bd = self.rn, self.rd, self.in_, self.id_
        norm_n = a * a * bd * bd + b * b * ad * ad
        norm_d = ad * ad * bd * bd
        t = _reduce(a * norm_d, ad * norm_n)
        u = _reduce(-b * norm_d, bd * norm_n)
        return _make(t[0], t[1], u[0], u[1])

    def __truediv__(self, other):
        a = _coerce(self)
        b = _coerce(other)
        if a is NotImplemented or b is NotImplemented:
            return NotImplemented
        return _mul(a, b.inverse())

    def __rtruediv__(self, other):
        b = _coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _mul(b, self.inverse())

    def __pow__(self, e, mod):
        if not PyLong_Check(e) or not isinstance(self, GaussianRational):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = _make(1, 1, 0, 1)
        base = self
        while e:
            if e & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            e >>= 1
        return result

    def conjugate(self):
        return _make(self.rn, self.rd, -self.in_, self.id_)

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        cdef GaussianRational g = o
        return self.rn == g.rn and self.rd == g.rd and self.in_ == g.in_ and self.id_ == g.id_

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
        return (_rebuild, (self.rn, self.rd, self.in_, self.id_))

    def __repr__(self):
        return f"GaussianRational({self!s})"

    def __str__(self):
        s = str(self.rn) if self.rd == 1 else f"{self.rn}/{self.rd}"
        if self.in_ != 0:
            sign = "-" if self.in_ < 0 else "+"
            n = abs(self.in_)
            s += f"{sign}{n}i" if self.id_ == 1 else f"{sign}{n}/{self.id_}i"
        return s


def _rebuild(rn, rd, in_, id_):
    return _make(rn, rd, in_, id_)


def axpy(dict acc, dict src, coeff):
    """acc += coeff * src for sparse dicts, dropping cancelled keys."""
    cdef GaussianRational c = _coerce(coeff)
    cdef GaussianRational val, old, new
    for key, v in src.items():
        val = _mul(<GaussianRational>v, c)
        o = acc.get(key)
        if o is None:
            if val.rn != 0 or val.in_ != 0:
                acc[key] = val
        else:
            new = _add(<GaussianRational>o, val)
            if new.rn != 0 or new.in_ != 0:
                acc[key] = new
            else:
                del acc[key]
    return acc
