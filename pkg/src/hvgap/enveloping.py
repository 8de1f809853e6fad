"""Formal words in the universal enveloping algebra.

Words are never normal-ordered: every use applies them to module vectors,
with the rightmost factor acting first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .algebra import (
    THV,
    Algebra,
    AlgebraError,
    LieElement,
    basis_from_json,
    basis_str,
    basis_to_json,
    check_basis,
    gap,
    is_central,
)
from .report import CheckReport
from .scalars import GaussianRational, ONE, as_scalar, axpy, binomial, format_scalar


@dataclass(frozen=True)
class UEWord:
    coeff: GaussianRational
    factors: tuple  # of basis tuples; rightmost acts first


class UEElement:
    """Formal sum of words; equality is on the canonical (merged, sorted) form."""

    def __init__(self, algebra: Algebra, words=()):
        self.algebra = algebra
        merged: dict = {}
        for w in words:
            for f in w.factors:
                check_basis(algebra, f)
            axpy(merged, {tuple(w.factors): as_scalar(w.coeff)}, 1)
        self._canon = merged

    @property
    def words(self) -> list:
        return [UEWord(c, f) for f, c in sorted(self._canon.items())]

    def __len__(self):
        return len(self._canon)

    def __add__(self, other: "UEElement") -> "UEElement":
        self._same(other)
        return UEElement(self.algebra, self.words + other.words)

    def __sub__(self, other: "UEElement") -> "UEElement":
        self._same(other)
        return UEElement(self.algebra, self.words + [UEWord(-w.coeff, w.factors) for w in other.words])

    def __mul__(self, scalar) -> "UEElement":
        s = as_scalar(scalar)
        return UEElement(self.algebra, [UEWord(w.coeff * s, w.factors) for w in self.words])

    __rmul__ = __mul__

    def _same(self, other):
        if other.algebra != self.algebra:
            raise AlgebraError(f"mixed algebras {self.algebra} and {other.algebra}")

    def __eq__(self, other):
        if not isinstance(other, UEElement):
            return NotImplemented
        return self.algebra == other.algebra and self._canon == other._canon

    def coefficient_sum(self) -> GaussianRational:
        total = GaussianRational(0)
        for c in self._canon.values():
            total = total + c
        return total

    def __str__(self):
        if not self._canon:
            return "0"
        parts = []
        for w in self.words:
            word = "*".join(basis_str(f) for f in w.factors) or "1"
            parts.append(f"{format_scalar(w.coeff)}*{word}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "words": [
                {"coeff": format_scalar(w.coeff), "factors": [basis_to_json(f) for f in w.factors]}
                for w in self.words
            ],
        }

    @classmethod
    def from_json(cls, data: dict, algebra: Algebra | None = None) -> "UEElement":
        alg = Algebra.from_json(data["algebra"]) if "algebra" in data else algebra
        if alg is None:
            raise AlgebraError("UEElement JSON needs an algebra")
        words = [
            UEWord(as_scalar(w["coeff"]), tuple(basis_from_json(f) for f in w["factors"]))
            for w in data["words"]
        ]
        return cls(alg, words)


def omega_build(p: int, l: int, m: int, i: int, j: int, s: int, algebra: Algebra | None = None) -> UEElement:
    """Sum_{k=0}^s (-1)^(s-k) C(s,k) I_{pl-pm-pk+i} I_{pm+pk+j}."""
    if not (1 <= i <= p - 1 and 1 <= j <= p - 1):
        raise ValueError(f"need 1 <= i, j <= p-1, got i={i}, j={j}, p={p}")
    if s < 0:
        raise ValueError("s must be >= 0")
    alg = gap(p) if algebra is None else algebra
    words = [
        UEWord(
            GaussianRational((-1) ** (s - k) * binomial(s, k)),
            (("I", p * l - p * m - p * k + i), ("I", p * m + p * k + j)),
        )
        for k in range(s + 1)
    ]
    return UEElement(alg, words)


def omega_recursion_check(p: int, l: int, m: int, i: int, j: int, s: int) -> CheckReport:
    """Omega^(s)_{l,m} == Omega^(s-1)_{l,m+1} - Omega^(s-1)_{l,m}."""
    report = CheckReport(f"omega_recursion[p={p},l={l},m={m},i={i},j={j},s={s}]", cases=1)
    if s < 1:
        return report.fail({"reason": "recursion needs s >= 1"})
    lhs = omega_build(p, l, m, i, j, s)
    rhs = omega_build(p, l, m + 1, i, j, s - 1) - omega_build(p, l, m, i, j, s - 1)
    if lhs != rhs:
        report.fail({"lhs": str(lhs), "rhs": str(rhs)})
    return report


def ue_apply(op: UEElement, vec: Mapping, act: Callable[[tuple, dict], dict]) -> dict:
    """Apply a formal UE element to a sparse vector via a basis-generator action."""
    out: dict = {}
    for w in op.words:
        v = dict(vec)
        for f in reversed(w.factors):
            if not v:
                break
            v = act(f, v)
        if v:
            axpy(out, v, w.coeff)
    return out


# ---------------------------------------------------------------- twists


def laurent(coeffs: Mapping) -> dict:
    """Normalize a Laurent coefficient map {exponent: scalar}, dropping zeros."""
    out = {}
    for k, c in coeffs.items():
        c = as_scalar(c)
        if c:
            out[int(k)] = c
    return out


def laurent_to_json(f: Mapping) -> dict:
    return {str(k): format_scalar(c) for k, c in sorted(f.items())}


def theta_image(f: Mapping, x: tuple, algebra: Algebra = THV) -> LieElement:
    """Generator image under the twist L_m -> L_m + sum_i a_i I_{m+i}; I and centrals fixed."""
    f = laurent(f)
    check_basis(algebra, x)
    terms = {x: ONE}
    if x[0] == "L" and not is_central(x):
        if algebra.kind == "gap" and any(i % algebra.p == 0 for i in f):
            raise ValueError("gap twist coefficients must avoid multiples of p")
        for i, a in f.items():
            axpy(terms, {("I", x[1] + i): a}, 1)
    return LieElement(algebra, terms)
