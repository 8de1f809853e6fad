"""Basis elements, sparse Lie elements and brackets.

Three algebras are supported:

* ``THV`` - twisted Heisenberg-Virasoro: ``L(n)``, ``I(n)`` and central
  ``CL``, ``CLI``, ``CI``.
* ``gap(p)`` - gap-p Virasoro, with absolute indices: ``L(n)`` for
  ``n % p == 0``, ``I(n)`` otherwise, and central ``C(j)`` for
  ``0 <= j <= p // 2``.
* ``MIRROR`` - mirror Heisenberg-Virasoro: ``D(n)``, ``H(r)`` with ``r`` a
  half-integer stored as the odd numerator ``2r``, central ``Cc`` and ``Ll``.

A basis element is a plain ``(tag, n)`` tuple; centrals without an index
carry ``n = 0``.  Brackets of basis elements return ``{basis: coeff}`` dicts
and are memoized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .report import CheckReport, timed
from .scalars import GaussianRational, as_scalar, axpy, format_scalar

Basis = tuple  # (tag, n)

CENTRAL_TAGS = frozenset({"CL", "CLI", "CI", "C", "Cc", "Ll"})
_NO_INDEX = frozenset({"CL", "CLI", "CI", "Cc", "Ll"})
_ONE_TWELFTH = GaussianRational(Fraction(1, 12))


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Algebra:
    kind: str  # "thv" | "gap" | "mirror"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("thv", "gap", "mirror"):
            raise AlgebraError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "gap":
            if self.p is None or self.p < 2:
                raise AlgebraError("gap-p algebra needs p >= 2")
        elif self.p is not None:
            raise AlgebraError(f"{self.kind} takes no p")

    def __str__(self):
        return f"gap(p={self.p})" if self.kind == "gap" else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p} if self.kind == "gap" else {"kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> "Algebra":
        return cls(data["kind"], data.get("p"))


THV = Algebra("thv")
MIRROR = Algebra("mirror")


def gap(p: int) -> Algebra:
    return Algebra("gap", p)


# basis constructors
def L(n: int) -> Basis:
    return ("L", n)


def I(n: int) -> Basis:  # noqa: E743
    return ("I", n)


def C(j: int) -> Basis:
    return ("C", j)


def D(n: int) -> Basis:
    return ("D", n)


def H(r) -> Basis:
    """Mirror Heisenberg mode h_r; ``r`` is a half-integer (Fraction, str or float-free)."""
    num2 = Fraction(r) * 2
    if num2.denominator != 1 or num2.numerator % 2 == 0:
        raise AlgebraError(f"h_r needs r in Z + 1/2, got {r}")
    return ("H", int(num2))


CL = ("CL", 0)
CLI = ("CLI", 0)
CI = ("CI", 0)
Cc = ("Cc", 0)
Ll = ("Ll", 0)


def is_central(x: Basis) -> bool:
    return x[0] in CENTRAL_TAGS


def degree(x: Basis) -> Fraction:
    """Grading degree read off the index (0 for centrals)."""
    t, n = x
    if t in CENTRAL_TAGS:
        return Fraction(0)
    if t == "H":
        return Fraction(n, 2)
    return Fraction(n)


def belongs(alg: Algebra, x: Basis) -> bool:
    if not (isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], int)):
        return False
    t, n = x
    if alg.kind == "thv":
        return t in ("L", "I") or (t in ("CL", "CLI", "CI") and n == 0)
    if alg.kind == "gap":
        p = alg.p
        if t == "L":
            return n % p == 0
        if t == "I":
            return n % p != 0
        return t == "C" and 0 <= n <= p // 2
    if t == "D":
        return True
    if t == "H":
        return n % 2 != 0
    return t in ("Cc", "Ll") and n == 0


def check_basis(alg: Algebra, x: Basis) -> None:
    if not belongs(alg, x):
        raise AlgebraError(f"{basis_str(x)} is not a basis element of {alg}")


def basis_str(x: Basis) -> str:
    t, n = x
    if t in _NO_INDEX:
        return t
    if t == "H":
        return f"H:{n}/2"
    return f"{t}:{n}"


def parse_basis(text: str) -> Basis:
    """Inverse of :func:`basis_str`; also accepts ``H:-1/2``-style half integers."""
    text = text.strip()
    if text in _NO_INDEX:
        return (text, 0)
    tag, sep, idx = text.partition(":")
    if not sep or tag not in ("L", "I", "C", "D", "H"):
        raise AlgebraError(f"malformed basis element {text!r}")
    try:
        if tag == "H":
            return H(Fraction(idx))
        return (tag, int(idx))
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraError(f"malformed basis index in {text!r}") from exc


def basis_to_json(x: Basis) -> dict:
    t, n = x
    if t in _NO_INDEX:
        return {"t": t}
    if t == "H":
        return {"t": "H", "num2": n}
    return {"t": t, "n": n}


def basis_from_json(data: dict) -> Basis:
    t = data["t"]
    if t in _NO_INDEX:
        return (t, 0)
    if t == "H":
        return ("H", int(data["num2"]))
    if t in ("L", "I", "D", "C"):
        return (t, int(data["n"]))
    raise AlgebraError(f"unknown basis tag {t!r}")


def _sort_key(x: Basis):
    t, n = x
    return (t, n)


# ---------------------------------------------------------------- brackets


@lru_cache(maxsize=None)
def _bracket_T(x: Basis, y: Basis) -> tuple:
    (tx, m), (ty, n) = x, y
    if tx in CENTRAL_TAGS or ty in CENTRAL_TAGS:
        return ()
    out = []
    if tx == "L" and ty == "L":
        if n != m:
            out.append((("L", m + n), GaussianRational(n - m)))
        if m + n == 0 and m * m * m != m:
            out.append((CL, _ONE_TWELFTH * (m * m * m - m)))
    elif tx == "L" and ty == "I":
        if n != 0:
            out.append((("I", m + n), GaussianRational(n)))
        if m + n == 0 and m * m + m != 0:
            out.append((CLI, GaussianRational(m * m + m)))
    elif tx == "I" and ty == "L":
        return tuple((b, -c) for b, c in _bracket_T(y, x))
    else:
        if m + n == 0 and m != 0:
            out.append((CI, GaussianRational(m)))
    return tuple(out)


@lru_cache(maxsize=None)
def _bracket_G(p: int, x: Basis, y: Basis) -> tuple:
    (tx, X), (ty, Y) = x, y
    if tx == "C" or ty == "C":
        return ()
    out = []
    if tx == "L" and ty == "L":
        m, n = X // p, Y // p
        if n != m:
            out.append((("L", X + Y), GaussianRational(p * (n - m))))
        if m + n == 0 and m * m * m != m:
            out.append((("C", 0), _ONE_TWELFTH * (m * m * m - m)))
    elif tx == "L" and ty == "I":
        out.append((("I", X + Y), GaussianRational(Y)))
    elif tx == "I" and ty == "L":
        return tuple((b, -c) for b, c in _bracket_G(p, y, x))
    else:
        # [I_{pm+i}, I_{pn+j}] = (pm+i) d_{i+j,p} d_{m+n+1,0} C_{min(i,p-i)}
        if X + Y == 0:
            i = X % p
            out.append((("C", min(i, p - i)), GaussianRational(X)))
    return tuple(out)


@lru_cache(maxsize=None)
def _bracket_M(x: Basis, y: Basis) -> tuple:
    (tx, m), (ty, n) = x, y
    if tx in CENTRAL_TAGS or ty in CENTRAL_TAGS:
        return ()
    out = []
    if tx == "D" and ty == "D":
        if m != n:
            out.append((("D", m + n), GaussianRational(m - n)))
        if m + n == 0 and m * m * m != m:
            out.append((Cc, _ONE_TWELFTH * (m * m * m - m)))
    elif tx == "D" and ty == "H":
        # [d_m, h_r] = -r h_{m+r}; n = 2r
        out.append((("H", 2 * m + n), GaussianRational(Fraction(-n, 2))))
    elif tx == "H" and ty == "D":
        return tuple((b, -c) for b, c in _bracket_M(y, x))
    else:
        if m + n == 0:
            out.append((Ll, GaussianRational(Fraction(m, 2))))
    return tuple(out)


def bracket_T(x: Basis, y: Basis) -> "LieElement":
    check_basis(THV, x)
    check_basis(THV, y)
    return LieElement(THV, dict(_bracket_T(x, y)))


def bracket_G(p: int, x: Basis, y: Basis) -> "LieElement":
    alg = gap(p)
    check_basis(alg, x)
    check_basis(alg, y)
    return LieElement(alg, dict(_bracket_G(p, x, y)))


def bracket_M(x: Basis, y: Basis) -> "LieElement":
    check_basis(MIRROR, x)
    check_basis(MIRROR, y)
    return LieElement(MIRROR, dict(_bracket_M(x, y)))


def bracket_terms(alg: Algebra, x: Basis, y: Basis) -> tuple:
    """Unchecked basis bracket as a tuple of (basis, coeff) pairs (hot path)."""
    if alg.kind == "thv":
        return _bracket_T(x, y)
    if alg.kind == "gap":
        return _bracket_G(alg.p, x, y)
    return _bracket_M(x, y)


def bracket_basis(alg: Algebra, x: Basis, y: Basis) -> "LieElement":
    check_basis(alg, x)
    check_basis(alg, y)
    return LieElement(alg, dict(bracket_terms(alg, x, y)))


# ---------------------------------------------------------------- elements


class LieElement:
    """Finite linear combination of basis elements of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: dict | None = None):
        self.algebra = algebra
        clean = {}
        for b, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                check_basis(algebra, b)
                clean[b] = c
        self.terms = clean

    @classmethod
    def basis(cls, algebra: Algebra, x: Basis, coeff=1) -> "LieElement":
        return cls(algebra, {x: coeff})

    @classmethod
    def zero(cls, algebra: Algebra) -> "LieElement":
        return cls(algebra)

    def _same(self, other: "LieElement"):
        if not isinstance(other, LieElement):
            raise TypeError("expected a LieElement")
        if other.algebra != self.algebra:
            raise AlgebraError(f"mixed algebras {self.algebra} and {other.algebra}")

    def __add__(self, other):
        self._same(other)
        return LieElement(self.algebra, axpy(dict(self.terms), other.terms, 1))

    def __sub__(self, other):
        self._same(other)
        return LieElement(self.algebra, axpy(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return LieElement(self.algebra, {b: -c for b, c in self.terms.items()})

    def __mul__(self, scalar):
        s = as_scalar(scalar)
        return LieElement(self.algebra, {b: c * s for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda bc: _sort_key(bc[0])))

    def without_centrals(self) -> "LieElement":
        return LieElement(self.algebra, {b: c for b, c in self.terms.items() if not is_central(b)})

    def bracket(self, other: "LieElement") -> "LieElement":
        return bracket_linear(self, other)

    def __repr__(self):
        return f"LieElement({self.algebra}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{format_scalar(c)}*{basis_str(b)}" for b, c in self)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "terms": [{"basis": basis_to_json(b), "coeff": format_scalar(c)} for b, c in self],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieElement":
        alg = Algebra.from_json(data["algebra"])
        terms: dict = {}
        for t in data["terms"]:
            axpy(terms, {basis_from_json(t["basis"]): as_scalar(t["coeff"])}, 1)
        return cls(alg, terms)


def bracket_linear(x: LieElement, y: LieElement, bracket: Callable | None = None) -> LieElement:
    """Bilinear extension of the basis bracket (optionally a custom basis table)."""
    x._same(y)
    alg = x.algebra
    out: dict = {}
    for bx, cx in x.terms.items():
        for by, cy in y.terms.items():
            terms = bracket(bx, by) if bracket is not None else bracket_terms(alg, bx, by)
            axpy(out, dict(terms), cx * cy)
    return LieElement(alg, out)


# ---------------------------------------------------------------- enumeration


def basis_within(alg: Algebra, bound: int, centrals: bool = True) -> list:
    """Basis elements with |index| <= bound (half-integer grid for mirror h_r)."""
    out = []
    if alg.kind == "thv":
        for n in range(-bound, bound + 1):
            out += [("L", n), ("I", n)]
        if centrals:
            out += [CL, CLI, CI]
    elif alg.kind == "gap":
        p = alg.p
        for n in range(-bound, bound + 1):
            out.append(("L", n) if n % p == 0 else ("I", n))
        if centrals:
            out += [("C", j) for j in range(p // 2 + 1)]
    else:
        for n in range(-bound, bound + 1):
            out.append(("D", n))
        for n2 in range(-2 * bound, 2 * bound + 1):
            if n2 % 2:
                out.append(("H", n2))
        if centrals:
            out += [Cc, Ll]
    return out


# ---------------------------------------------------------------- checks


def _lin(alg, bracket, x_terms: dict, y: Basis) -> dict:
    out: dict = {}
    for b, c in x_terms.items():
        axpy(out, dict(bracket(b, y)), c)
    return out


def jacobi_check(alg: Algebra, index_bound: int, bracket: Callable | None = None) -> CheckReport:
    """Exhaustive Jacobi identity over all basis triples within the bound.

    ``bracket`` replaces the basis bracket table (used for negative controls).
    """
    if bracket is None:

        def bracket(a, b):
            return bracket_terms(alg, a, b)

    report = CheckReport(f"jacobi[{alg}]")
    basis = basis_within(alg, index_bound)
    with timed(report):
        # [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 for all x, y, z
        inner = {(y, z): dict(bracket(y, z)) for y in basis for z in basis}
        for x in basis:
            for y in basis:
                for z in basis:
                    report.cases += 1
                    acc: dict = {}
                    for u, (a, b) in ((x, (y, z)), (y, (z, x)), (z, (x, y))):
                        for t, c in inner[(a, b)].items():
                            axpy(acc, dict(bracket(u, t)), c)
                    if acc:
                        return report.fail(
                            {
                                "triple": [basis_str(x), basis_str(y), basis_str(z)],
                                "sum": {basis_str(b): format_scalar(c) for b, c in acc.items()},
                            }
                        )
    return report


def mirror_iso(x: Basis, central_sign: int = -1) -> LieElement:
    """Image of a gap-2 basis element in the mirror algebra.

    L_{2m} -> 2 d_{-m}, I_{2m+1} -> 2 h_{-m-1/2}, C_1 -> -2 l and
    C_0 -> 4 * central_sign * c.  Only ``central_sign = -1`` is a Lie
    homomorphism with the brackets implemented here; ``+1`` is kept for the
    negative control.
    """
    check_basis(gap(2), x)
    t, n = x
    if t == "L":
        return LieElement(MIRROR, {("D", -(n // 2)): 2})
    if t == "I":
        # I_{2m+1} -> 2 h_{-(2m+1)/2}
        return LieElement(MIRROR, {("H", -n): 2})
    if n == 0:
        return LieElement(MIRROR, {Cc: 4 * central_sign})
    return LieElement(MIRROR, {Ll: -2})


def mirror_iso_element(x: LieElement, central_sign: int = -1) -> LieElement:
    if x.algebra != gap(2):
        raise AlgebraError("mirror_iso is defined on gap(2) elements")
    out = LieElement.zero(MIRROR)
    for b, c in x.terms.items():
        out = out + mirror_iso(b, central_sign) * c
    return out


def hom_check(
    fmap: Callable[[Basis], LieElement],
    source: Algebra,
    target: Algebra,
    index_bound: int,
) -> CheckReport:
    """Verify fmap([x, y]) == [fmap(x), fmap(y)] for all basis pairs within the bound."""
    report = CheckReport(f"hom[{source}->{target}]")

    def image(e: LieElement) -> LieElement:
        out = LieElement.zero(target)
        for b, c in e.terms.items():
            out = out + fmap(b) * c
        return out

    basis = basis_within(source, index_bound)
    images = {b: fmap(b) for b in basis}
    with timed(report):
        for x in basis:
            for y in basis:
                report.cases += 1
                lhs = image(bracket_basis(source, x, y))
                rhs = bracket_linear(images[x], images[y])
                if lhs != rhs:
                    return report.fail(
                        {"pair": [basis_str(x), basis_str(y)], "lhs": str(lhs), "rhs": str(rhs)}
                    )
    return report


def antisymmetry_check(alg: Algebra, index_bound: int) -> CheckReport:
    report = CheckReport(f"antisymmetry[{alg}]")
    basis = basis_within(alg, index_bound)
    for x in basis:
        for y in basis:
            report.cases += 1
            if bracket_basis(alg, x, y) != -bracket_basis(alg, y, x):
                return report.fail([basis_str(x), basis_str(y)])
    return report


def structure_constants(alg: Algebra, bound: int) -> Iterable[tuple]:
    """Rows (x, y, basis, coeff) of nonzero bracket terms, deterministic order."""
    basis = sorted(basis_within(alg, bound), key=basis_str)
    rows = []
    for x in basis:
        for y in basis:
            for b, c in bracket_terms(alg, x, y):
                rows.append((basis_str(x), basis_str(y), basis_str(b), format_scalar(c)))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return rows
