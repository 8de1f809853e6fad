"""Verma modules over gap(2), tensor products and twisted modules."""

from __future__ import annotations

from ..algebra import basis_str, bracket_terms, check_basis, gap, is_central, parse_basis
from ..enveloping import laurent, laurent_to_json, theta_image
from ..scalars import ONE, as_scalar, axpy, format_scalar
from .base import Module, ModuleError


class CutoffExceeded(ModuleError):
    pass


def _mono_degree(mono: tuple) -> int:
    return -sum(n for _, n in mono)


def mono_str(mono: tuple) -> str:
    return "*".join(basis_str(x) for x in mono) or "1"


def mono_parse(text: str) -> tuple:
    if text.strip() == "1":
        return ()
    return tuple(parse_basis(s) for s in text.split("*"))


class Verma(Module):
    """M(c, h, l) = U(g_2) (x)_{U(g_+)} C 1 with PBW basis of negative modes.

    Keys are monomials: tuples of negative-mode basis elements sorted by
    index ascending, the empty tuple being the highest-weight vector.
    """

    kind = "verma"

    def __init__(self, c, h, l, cutoff: int = 6):
        super().__init__()
        self.algebra = gap(2)
        self.c, self.h, self.l = as_scalar(c), as_scalar(h), as_scalar(l)
        if cutoff < 0:
            raise ModuleError("cutoff must be >= 0")
        self.cutoff = cutoff

    def check_key(self, mono):
        prev = None
        for x in mono:
            check_basis(self.algebra, x)
            if is_central(x) or x[1] >= 0:
                raise ModuleError(f"{basis_str(x)} is not a negative mode")
            if prev is not None and x[1] < prev:
                raise ModuleError(f"monomial {mono_str(mono)} is not in canonical order")
            prev = x[1]
        if _mono_degree(mono) > self.cutoff:
            raise CutoffExceeded(f"monomial {mono_str(mono)} exceeds cutoff {self.cutoff}")

    def _central_value(self, x):
        return self.c if x[1] == 0 else self.l

    def _act_basis(self, y, mono):
        check_basis(self.algebra, y)
        t, n = y
        if is_central(y):
            v = self._central_value(y)
            return {mono: v} if v else {}
        if n < 0 and (not mono or n <= mono[0][1]):
            new = (y,) + mono
            if _mono_degree(new) > self.cutoff:
                raise CutoffExceeded(
                    f"{basis_str(y)} . {mono_str(mono)} has degree {_mono_degree(new)} > cutoff {self.cutoff}"
                )
            return {new: ONE}
        if not mono:
            # positive part on the highest-weight vector
            return {(): self.h} if (y == ("L", 0) and self.h) else {}
        # y x1 rest = x1 (y rest) + [y, x1] rest
        x1, rest = mono[0], mono[1:]
        out = self.act(x1, self.act_basis(y, rest))
        for z, cz in bracket_terms(self.algebra, y, x1):
            axpy(out, self.act_basis(z, rest), cz)
        return out

    def basis_window(self, window, degree_bound=0):
        """All monomials of degree <= window."""
        modes = [("L", -2 * k) for k in range(1, window // 2 + 1)]
        modes += [("I", -(2 * k - 1)) for k in range(1, (window + 1) // 2 + 1)]
        modes.sort(key=lambda x: x[1])
        out = []

        def grow(prefix, start, deg):
            out.append(prefix)
            for idx in range(start, len(modes)):
                x = modes[idx]
                nd = deg - x[1]
                if nd <= window:
                    grow(prefix + (x,), idx, nd)

        grow((), 0, 0)
        return sorted(out, key=lambda m: (_mono_degree(m), m))

    def weight_index(self, mono):
        return -_mono_degree(mono)

    def eigenvalue(self, mono):
        return self.h - _mono_degree(mono)

    def vector_to_json(self, vec):
        return {mono_str(m): format_scalar(c) for m, c in sorted(vec.items(), key=lambda t: (_mono_degree(t[0]), t[0]))}

    def vector_from_json(self, data):
        out: dict = {}
        for k, c in data.items():
            mono = mono_parse(k)
            self.check_key(mono)
            axpy(out, {mono: as_scalar(c)}, 1)
        return out

    def descriptor(self):
        return {
            "module": self.kind,
            "c": format_scalar(self.c),
            "h": format_scalar(self.h),
            "l": format_scalar(self.l),
            "cutoff": self.cutoff,
        }

    def __repr__(self):
        return f"Verma(c={self.c}, h={self.h}, l={self.l}, cutoff={self.cutoff})"


class TensorProduct(Module):
    """Diagonal action x (u (x) w) = xu (x) w + u (x) xw on pairs of keys."""

    kind = "tensor"

    def __init__(self, left: Module, right: Module):
        super().__init__()
        if left.algebra != right.algebra:
            raise ModuleError(f"factors live over different algebras ({left.algebra}, {right.algebra})")
        self.algebra = left.algebra
        self.left, self.right = left, right
        self.is_weight_module = left.is_weight_module and right.is_weight_module

    def check_key(self, key):
        self.left.check_key(key[0])
        self.right.check_key(key[1])

    def _act_basis(self, x, key):
        u, w = key
        out: dict = {}
        for u2, c in self.left.act_basis(x, u).items():
            out[(u2, w)] = c
        axpy(out, {(u, w2): c for w2, c in self.right.act_basis(x, w).items()}, 1)
        return out

    def basis_window(self, window, degree_bound=0):
        return [(u, w) for u in self.left.basis_window(window, degree_bound) for w in self.right.basis_window(window, degree_bound)]

    def weight_index(self, key):
        return self.left.weight_index(key[0]) + self.right.weight_index(key[1])

    def eigenvalue(self, key):
        return self.left.eigenvalue(key[0]) + self.right.eigenvalue(key[1])

    def vector_to_json(self, vec):
        rows = []
        for (u, w), c in vec.items():
            lu = self.left.vector_to_json({u: ONE})
            rw = self.right.vector_to_json({w: ONE})
            rows.append({"left": lu, "right": rw, "coeff": format_scalar(c)})
        rows.sort(key=lambda r: (repr(r["left"]), repr(r["right"])))
        return {"terms": rows}

    def vector_from_json(self, data):
        out: dict = {}
        for row in data["terms"]:
            (u, cu), = self.left.vector_from_json(row["left"]).items()
            (w, cw), = self.right.vector_from_json(row["right"]).items()
            axpy(out, {(u, w): cu * cw * as_scalar(row["coeff"])}, 1)
        return out

    def descriptor(self):
        return {"module": self.kind, "left": self.left.descriptor(), "right": self.right.descriptor()}

    def __repr__(self):
        return f"TensorProduct({self.left!r}, {self.right!r})"


class Twisted(Module):
    """Base module with L_m acting as L_m + sum_i a_i I_{m+i}; I and centrals unchanged."""

    kind = "twisted"
    is_weight_module = False

    def __init__(self, base: Module, f):
        super().__init__()
        self.base = base
        self.algebra = base.algebra
        self.f = laurent(f)
        if self.algebra.kind == "gap" and any(i % self.algebra.p == 0 for i in self.f):
            raise ModuleError(f"gap twist support {sorted(self.f)} meets {self.algebra.p}Z")
        if self.algebra.kind == "mirror":
            raise ModuleError("twists are defined over thv and gap algebras only")
        if not self.f:
            self.is_weight_module = base.is_weight_module

    def check_key(self, key):
        self.base.check_key(key)

    def _act_basis(self, x, key):
        img = theta_image(self.f, x, self.algebra)
        out: dict = {}
        for y, c in img.terms.items():
            axpy(out, self.base.act_basis(y, key), c)
        return out

    def basis_window(self, window, degree_bound=0):
        return self.base.basis_window(window, degree_bound)

    def weight_index(self, key):
        return self.base.weight_index(key)

    def eigenvalue(self, key):
        return self.base.eigenvalue(key)

    def vector_to_json(self, vec):
        return self.base.vector_to_json(vec)

    def vector_from_json(self, data):
        return self.base.vector_from_json(data)

    def descriptor(self):
        return {"module": self.kind, "base": self.base.descriptor(), "f": laurent_to_json(self.f)}

    def __repr__(self):
        return f"Twisted({self.base!r}, f={laurent_to_json(self.f)})"
