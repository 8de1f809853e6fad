"""Exact scalars in Q(i): arithmetic, factorials and the text wire form.

Text grammar (used in every JSON payload)::

    [-]N[/D][ (+|-) N[/D] i ]

The real part is always written; the imaginary part only when nonzero.
On input a bare ``i`` is accepted for ``1i``.
"""

from __future__ import annotations

import os
import re
from functools import lru_cache

if os.environ.get("HVGAP_PURE_PYTHON"):
    from ._scalar_py import GaussianRational, axpy

    BACKEND = "python"
else:
    try:
        from ._scalar_cy import GaussianRational, axpy

        BACKEND = "cython"
    except ImportError:
        from ._scalar_py import GaussianRational, axpy

        BACKEND = "python"

__all__ = [
    "BACKEND",
    "GaussianRational",
    "ScalarParseError",
    "ZERO",
    "ONE",
    "I",
    "axpy",
    "as_scalar",
    "binomial",
    "factorial",
    "format_scalar",
    "parse_scalar",
]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

FACTORIAL_CACHE_BOUND = 64


class ScalarParseError(ValueError):
    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"{reason} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos
        self.reason = reason


def as_scalar(x) -> GaussianRational:
    """Coerce int, Fraction, str or GaussianRational to GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussianRational(x)


@lru_cache(maxsize=FACTORIAL_CACHE_BOUND + 1)
def _fact_cached(n: int) -> int:
    return 1 if n < 2 else n * _fact_cached(n - 1)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n <= FACTORIAL_CACHE_BOUND:
        return _fact_cached(n)
    r = _fact_cached(FACTORIAL_CACHE_BOUND)
    for k in range(FACTORIAL_CACHE_BOUND + 1, n + 1):
        r *= k
    return r


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


_NUM = r"(\d+)(?:\s*/\s*(\d+))?"
_REAL = re.compile(r"\s*([-+−]?)\s*" + _NUM)
_IMAG = re.compile(r"\s*([-+−])\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*i\s*$")
_PURE_IMAG = re.compile(r"\s*([-+−]?)\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*i\s*$")


def _fraction_parts(text, m, sign_group):
    sign = -1 if m.group(sign_group) in ("-", "−") else 1
    num = m.group(sign_group + 1)
    num = 1 if num is None else int(num)  # "+i" means "+1i"
    den = m.group(sign_group + 2)
    den = 1 if den is None else int(den)
    if den == 0:
        raise ScalarParseError(text, m.start(sign_group + 2), "zero denominator")
    return sign * num, den


def parse_scalar(text: str) -> GaussianRational:
    """Parse the canonical scalar grammar; raises ScalarParseError with a position."""
    if not isinstance(text, str):
        raise ScalarParseError(str(text), 0, "expected a string")
    mp = _PURE_IMAG.match(text)
    if mp is not None:
        in_, id_ = _fraction_parts(text, mp, 1)
        return GaussianRational.from_parts(0, 1, in_, id_)
    m = _REAL.match(text)
    if m is None:
        raise ScalarParseError(text, 0, "expected a real part")
    rn, rd = _fraction_parts(text, m, 1)
    rest = text[m.end():]
    if rest.strip() == "":
        return GaussianRational.from_parts(rn, rd, 0, 1)
    mi = _IMAG.match(rest)
    if mi is None:
        pos = m.end() + (len(rest) - len(rest.lstrip()))
        raise ScalarParseError(text, pos, "malformed imaginary part")
    in_, id_ = _fraction_parts(rest, mi, 1)
    return GaussianRational.from_parts(rn, rd, in_, id_)


def format_scalar(x) -> str:
    return str(as_scalar(x))
