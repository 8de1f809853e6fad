"""V (x) C[x^{+-1}] and V (x) C[P]: weight modules built from a restricted module V."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import THV, basis_str, check_basis, gap, is_central
from ..restricted import RestrictedModule, restricted_from_json
from ..scalars import GaussianRational, as_scalar, axpy, format_scalar, parse_scalar
from .base import Module, ModuleError, power_over_factorial


@dataclass(frozen=True)
class GapParams:
    p: int
    d: tuple
    P: frozenset = field(default=None)

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or p < 2:
            raise ModuleError(f"p must be an integer >= 2, got {p!r}")
        d = tuple(int(x) for x in self.d)
        if len(d) != p or any(x not in (0, 1) for x in d):
            raise ModuleError(f"d must be a 0/1 tuple of length {p}, got {self.d!r}")
        object.__setattr__(self, "d", d)
        P = frozenset(range(p)) if self.P is None else frozenset(int(i) for i in self.P)
        if not P or any(not 0 <= i < p for i in P):
            raise ModuleError(f"P must be a nonempty subset of 0..{p - 1}, got {sorted(P)}")
        object.__setattr__(self, "P", P)

    @property
    def mind(self) -> int:
        return min(self.d)

    @property
    def mindP(self) -> int:
        return min(self.d[i] for i in self.P)

    @property
    def PminusP(self) -> frozenset:
        return frozenset((i - j) % self.p for i in self.P for j in self.P)

    @property
    def full(self) -> bool:
        return len(self.P) == self.p

    def in_scriptP(self, k: int) -> bool:
        return k % self.p in self.P

    def to_json(self) -> dict:
        return {"p": self.p, "d": list(self.d), "P": sorted(self.P)}

    @classmethod
    def from_json(cls, data: dict) -> "GapParams":
        return cls(int(data["p"]), tuple(data["d"]), data.get("P"))


def sigma_shift(P, t: int, p: int) -> frozenset:
    """Image of P under the t-th power of the cycle i -> i+1 mod p."""
    return frozenset((i + t) % p for i in P)


class TensorModule(Module):
    """Shared implementation of the tensor constructions.

    Keys are ``(k, vkey)`` with ``vkey`` a basis key of V.  With ``gated``
    the I-action carries the factor [(i + k) mod p in P] and keys live on
    k mod p in P.
    """

    gated = False
    kind = ""

    def __init__(self, V: RestrictedModule, a, gp: GapParams):
        super().__init__()
        self.V = V
        self.a = as_scalar(a)
        self.gp = gp
        lvl = V.ann_level()
        self.h, self.q = lvl.h, lvl.q
        need = self._used_d()
        if need and V.n > min(need):
            raise ModuleError(
                f"V is a T_{V.n}-module but the action needs I_0 (d_i = 0 for some used residue i)"
            )

    def _used_d(self) -> list:
        return list(self.gp.d)

    def check_key(self, key):
        k, vk = key
        if not self.V.is_key(vk):
            raise ModuleError(f"{vk!r} is not a basis key of {self.V!r}")
        if self.gated and not self.gp.in_scriptP(k):
            raise ModuleError(f"weight index {k} has residue {k % self.gp.p} outside P = {sorted(self.gp.P)}")

    def _act_basis(self, x, key):
        check_basis(self.algebra, x)
        self.check_key(key)
        t, n = x
        if is_central(x):
            return {}
        k, vk = key
        V = self.V
        out: dict = {}
        if t == "L":
            s = (self.a + k) if k else self.a
            if s:
                out[(n + k, vk)] = s
            if self.q is not None and n:
                for j in range(self.q + 1):
                    img = V.act_basis(("L", j), vk)
                    if img:
                        c = power_over_factorial(n, j + 1)
                        axpy(out, {(n + k, w): cw for w, cw in img.items()}, c)
            return out
        p = self.gp.p
        i = n % p
        if self.gated and not self.gp.in_scriptP(i + k):
            return out
        if self.h is None:
            return out
        for e in range(self.gp.d[i], self.h + 1):
            if e < V.n:
                raise ModuleError(f"{basis_str(x)} needs I_{e}, which is not in T_{V.n}")
            img = V.act_basis(("I", e), vk)
            if img:
                axpy(out, {(n + k, w): cw for w, cw in img.items()}, power_over_factorial(n, e))
        return out

    def basis_window(self, window: int, degree_bound: int = 0) -> list:
        vb = self.V.basis(degree_bound)
        return [(k, v) for k in range(-window, window + 1) if not self.gated or self.gp.in_scriptP(k) for v in vb]

    def weight_index(self, key):
        return key[0]

    def eigenvalue(self, key):
        return self.a + key[0]

    def vector_to_json(self, vec: dict) -> dict:
        comps: dict = {}
        for (k, vk), c in vec.items():
            comps.setdefault(k, {})[vk] = c
        return {str(k): self.V.vector_to_json(comps[k]) for k in sorted(comps)}

    def vector_from_json(self, data: dict) -> dict:
        out: dict = {}
        for ks, comp in data.items():
            k = int(ks)
            if isinstance(comp, str):
                comp = {"0": comp}
            for vk, c in self.V.vector_from_json(comp).items():
                self.check_key((k, vk))
                axpy(out, {(k, vk): c}, 1)
        return out

    def descriptor(self) -> dict:
        out = {"module": self.kind, "V": self.V.to_json(), "a": format_scalar(self.a)}
        out.update(self.gp.to_json())
        if not self.gated:
            del out["P"]
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self.V!r}, a={self.a}, {self.gp})"


class TensorT(TensorModule):
    """The thv-module V (x) C[x^{+-1}] attached to (V, a, d)."""

    kind = "tensorT"

    def __init__(self, V, a, d, p: int | None = None):
        d = tuple(d)
        gp = GapParams(len(d) if p is None else p, d)
        self.algebra = THV
        super().__init__(V, a, gp)


class TensorG(TensorModule):
    """The gap(p)-module V (x) C[P] attached to (V, a, d, P)."""

    kind = "tensorG"
    gated = True

    def __init__(self, V, a, gp: GapParams):
        self.algebra = gap(gp.p)
        super().__init__(V, a, gp)

    def _used_d(self):
        # the gate only lets I_{pm+i} act for i in (P - P) \ {0}
        gp = self.gp
        return [gp.d[i] for i in sorted(gp.PminusP) if i]


def i0_acts(V: RestrictedModule, degree_bound: int = 3) -> bool:
    """Whether I_0 acts nonzero on V (probed on the low-degree basis)."""
    if V.n > 0 or V.ann_level().h is None:
        return False
    return any(V.act_basis(("I", 0), key) for key in V.basis(degree_bound))


def thv_d_conflict(d, V: RestrictedModule) -> bool:
    """Whether the thv construction on (V, d) violates [L_m, I_n] = n I_{m+n}.

    L_m moves the residue of n, and the I_0 part of the commutator is
    c n v(m+n+k) on one side iff d_{n mod p} = 0 and on the other iff
    d_{(m+n) mod p} = 0, so d must be constant unless I_0 acts as zero.
    """
    return len(set(d)) > 1 and i0_acts(V)


def gate_conflicts(gp: GapParams, V: RestrictedModule) -> list:
    """Residue triples (k, i, j) where the gated I-action cannot commute.

    For k, i+j+k in P the two orders I_X I_Y v(k) and I_Y I_X v(k) pass the
    gate iff j+k resp. i+k lies in P.  When these differ and both I-sums are
    nonzero on V (h >= d_i, d_j), [I_X, I_Y] = central = 0 is violated.
    """
    h = V.ann_level().h
    if h is None:
        return []
    p, P, d = gp.p, gp.P, gp.d
    out = []
    for k in sorted(P):
        for i in range(1, p):
            for j in range(i + 1, p):
                if (i + j + k) % p not in P or h < d[i] or h < d[j]:
                    continue
                if ((i + k) % p in P) != ((j + k) % p in P):
                    out.append((k, i, j))
    return out


class IntermediateT(Module):
    """A_{a,b,c}: L_m v(k) = (a+k+bm) v(m+k), I_m v(k) = c v(m+k)."""

    kind = "intermediateT"

    def __init__(self, a, b, c):
        super().__init__()
        self.algebra = THV
        self.a, self.b, self.c = as_scalar(a), as_scalar(b), as_scalar(c)

    def _act_basis(self, x, k):
        check_basis(THV, x)
        t, m = x
        if is_central(x):
            return {}
        s = self.a + k + self.b * m if t == "L" else self.c
        return {m + k: s} if s else {}

    def basis_window(self, window, degree_bound=0):
        return list(range(-window, window + 1))

    def weight_index(self, key):
        return key

    def eigenvalue(self, key):
        return self.a + key

    def descriptor(self):
        return {"module": self.kind, "a": format_scalar(self.a), "b": format_scalar(self.b), "c": format_scalar(self.c)}

    def __repr__(self):
        return f"IntermediateT(a={self.a}, b={self.b}, c={self.c})"


class IntermediateG(Module):
    """V(a,b,F) over gap(p) on span{v(k) : k mod p in P}, F_{i,j} = c [d_i = 0] [j in P]."""

    kind = "intermediateG"

    def __init__(self, a, b, c, gp: GapParams):
        super().__init__()
        p = gp.p
        if min(gp.d[1:]) != 0:
            raise ModuleError("need min(d_1, ..., d_{p-1}) = 0")
        for i in range(1, p):
            if gp.d[i]:
                continue
            for j in gp.P:
                if (i + j) % p not in gp.P:
                    raise ModuleError(f"closure fails: d_{i} = 0, {j} in P but {(i + j) % p} not in P")
        self.algebra = gap(p)
        self.gp = gp
        self.a, self.b, self.c = as_scalar(a), as_scalar(b), as_scalar(c)

    def F(self, i: int, j: int) -> GaussianRational:
        gp = self.gp
        return self.c if gp.d[i] == 0 and j % gp.p in gp.P else GaussianRational(0)

    def check_key(self, k):
        if not self.gp.in_scriptP(k):
            raise ModuleError(f"weight index {k} outside P = {sorted(self.gp.P)}")

    def _act_basis(self, x, k):
        check_basis(self.algebra, x)
        self.check_key(k)
        t, n = x
        if is_central(x):
            return {}
        if t == "L":
            s = self.a + k + self.b * n
        else:
            s = self.F(n % self.gp.p, k % self.gp.p)
        return {n + k: s} if s else {}

    def basis_window(self, window, degree_bound=0):
        return [k for k in range(-window, window + 1) if self.gp.in_scriptP(k)]

    def weight_index(self, key):
        return key

    def eigenvalue(self, key):
        return self.a + key

    def descriptor(self):
        out = {"module": self.kind, "a": format_scalar(self.a), "b": format_scalar(self.b), "c": format_scalar(self.c)}
        out.update(self.gp.to_json())
        return out

    def __repr__(self):
        return f"IntermediateG(a={self.a}, b={self.b}, c={self.c}, {self.gp})"


class MirrorIS(Module):
    """A(alpha, beta, gamma, Q) over gap(2) with basis v_x, x mod 2 in Q."""

    kind = "mirrorIS"

    def __init__(self, alpha, beta, gamma, Q=(0, 1)):
        super().__init__()
        Q = frozenset(int(r) for r in Q)
        if not Q or not Q <= {0, 1}:
            raise ModuleError(f"Q must be a nonempty subset of {{0, 1}}, got {sorted(Q)}")
        self.alpha, self.beta, self.gamma = as_scalar(alpha), as_scalar(beta), as_scalar(gamma)
        if not self.gamma:
            raise ModuleError("gamma must be nonzero")
        self.Q = Q
        self.algebra = gap(2)

    @property
    def reducible(self) -> bool:
        a, b = self.alpha, self.beta
        even = a.is_integer() and int(a.re) % 2 == 0
        return self.Q != {0, 1} and even and b in (GaussianRational(0), GaussianRational(1))

    def check_key(self, x):
        if x % 2 not in self.Q:
            raise ModuleError(f"v_{x} is not in A(..., Q={sorted(self.Q)})")

    def _act_basis(self, y, x):
        check_basis(self.algebra, y)
        self.check_key(x)
        t, n = y
        if is_central(y):
            return {}
        if t == "L":
            s = self.alpha + self.beta * n + x
            return {x + n: s} if s else {}
        if self.Q != {0, 1}:
            return {}
        return {x + n: GaussianRational(1) if x % 2 == 0 else self.gamma}

    def basis_window(self, window, degree_bound=0):
        return [x for x in range(-window, window + 1) if x % 2 in self.Q]

    def weight_index(self, key):
        return key

    def eigenvalue(self, key):
        return self.alpha + key

    def descriptor(self):
        return {
            "module": self.kind,
            "alpha": format_scalar(self.alpha),
            "beta": format_scalar(self.beta),
            "gamma": format_scalar(self.gamma),
            "Q": sorted(self.Q),
        }

    def __repr__(self):
        return f"MirrorIS(alpha={self.alpha}, beta={self.beta}, gamma={self.gamma}, Q={sorted(self.Q)})"


def tensor_from_json(data: dict) -> Module:
    kind = data["module"]
    if kind == "tensorT":
        return TensorT(restricted_from_json(data["V"]), parse_scalar(data["a"]), tuple(data["d"]))
    if kind == "tensorG":
        return TensorG(restricted_from_json(data["V"]), parse_scalar(data["a"]), GapParams.from_json(data))
    if kind == "intermediateT":
        return IntermediateT(data["a"], data["b"], data["c"])
    if kind == "intermediateG":
        return IntermediateG(data["a"], data["b"], data["c"], GapParams.from_json(data))
    if kind == "mirrorIS":
        return MirrorIS(data["alpha"], data["beta"], data["gamma"], data.get("Q", (0, 1)))
    raise ModuleError(f"unknown module kind {kind!r}")
