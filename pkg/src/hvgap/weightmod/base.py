"""Common machinery for modules given by an action on basis vectors."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..algebra import Algebra, LieElement, basis_within, is_central
from ..scalars import GaussianRational, as_scalar, axpy, factorial, format_scalar


class ModuleError(ValueError):
    pass


@lru_cache(maxsize=None)
def power_over_factorial(base: int, e: int) -> GaussianRational:
    """base^e / e! with 0^0 = 1."""
    return GaussianRational(Fraction(base**e, factorial(e)))


class Module:
    """A module over ``self.algebra`` with a basis-level action.

    Subclasses implement ``_act_basis(x, key) -> dict``; results are cached
    per instance, so instances must be treated as immutable.
    """

    algebra: Algebra
    is_weight_module = True

    def __init__(self):
        self._cache: dict = {}

    def _act_basis(self, x: tuple, key) -> dict:
        raise NotImplementedError

    def act_basis(self, x: tuple, key) -> dict:
        ck = (x, key)
        hit = self._cache.get(ck)
        if hit is None:
            hit = self._act_basis(x, key)
            self._cache[ck] = hit
        return hit

    def act(self, x: tuple, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            img = self.act_basis(x, key)
            if img:
                axpy(out, img, c)
        return out

    def act_element(self, elem, vec: dict) -> dict:
        """Action of a Lie element (LieElement or {basis: coeff})."""
        terms = elem.terms if isinstance(elem, LieElement) else elem
        out: dict = {}
        for x, c in terms.items():
            axpy(out, self.act(x, vec), c)
        return out

    def generators(self, bound: int) -> list:
        return basis_within(self.algebra, bound)

    def basis_window(self, window: int, degree_bound: int = 0) -> list:
        raise NotImplementedError

    def weight_index(self, key):
        """Integer weight label of a basis key (None for non-weight modules)."""
        raise NotImplementedError

    def eigenvalue(self, key) -> GaussianRational:
        """L_0-eigenvalue of a basis key."""
        raise NotImplementedError

    def check_key(self, key) -> None:
        pass

    def descriptor(self) -> dict:
        raise NotImplementedError

    # JSON of vectors: module-specific component layout
    def vector_to_json(self, vec: dict) -> dict:
        return {str(k): format_scalar(c) for k, c in sorted(vec.items())}

    def vector_from_json(self, data: dict) -> dict:
        out: dict = {}
        for k, c in data.items():
            axpy(out, {int(k): as_scalar(c)}, 1)
        return out

    def central_acts_trivially(self, x) -> bool:
        return is_central(x)


class WeightVector:
    """Finitely supported vector of a module, with the module attached."""

    __slots__ = ("module", "comps")

    def __init__(self, module: Module, comps: dict | None = None):
        self.module = module
        clean: dict = {}
        for k, c in (comps or {}).items():
            module.check_key(k)
            axpy(clean, {k: as_scalar(c)}, 1)
        self.comps = clean

    @classmethod
    def basis(cls, module: Module, key, coeff=1) -> "WeightVector":
        return cls(module, {key: coeff})

    def act(self, x) -> "WeightVector":
        if isinstance(x, LieElement):
            return WeightVector(self.module, self.module.act_element(x, self.comps))
        return WeightVector(self.module, self.module.act(x, self.comps))

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(self.module, axpy(dict(self.comps), other.comps, 1))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(self.module, axpy(dict(self.comps), other.comps, -1))

    def __mul__(self, s) -> "WeightVector":
        s = as_scalar(s)
        return WeightVector(self.module, {k: c * s for k, c in self.comps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.comps == other.comps

    def __bool__(self):
        return bool(self.comps)

    def __repr__(self):
        return f"WeightVector({self.module.vector_to_json(self.comps)})"

    def to_json(self) -> dict:
        return {"module": self.module.descriptor(), "comps": self.module.vector_to_json(self.comps)}

    @classmethod
    def from_json(cls, data: dict) -> "WeightVector":
        from .registry import module_from_json

        module = module_from_json(data["module"])
        return cls(module, module.vector_from_json(data["comps"]))
