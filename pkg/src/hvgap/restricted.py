"""Concrete restricted modules over the positive subalgebras T_0 and T_1.

T_n is spanned by L_k (k >= 0) and I_{n+k} (k >= 0).  Three families are
available, all with trivial central action:

* :class:`OneDim` - C v with L_0 v = b v, I_0 v = c v, everything else zero.
* :class:`Whittaker` - C[t], t^k = L_0^k w, induced from a character psi of
  span{L_k (k >= 1), I_k (k >= 1)}; psi is free only on L_1, L_2 and I_1
  (I_2 = [L_1, I_1] is a commutator).  Positive modes act by shifts:
  X_k p(t) = psi(X_k) p(t - k).  For n = 0 the central I_0 acts by lambda0.
* :class:`Formal` - free commutative symbols I_{j1} I_{j2} ... v with
  0 <= j <= h, for I-only computations at any annihilating level h.

Vectors are sparse dicts; the keys are ``0`` (OneDim), the t-degree
(Whittaker) or a sorted tuple of I-indices (Formal).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import THV, AlgebraError, bracket_terms, basis_str, is_central
from .linalg import EchelonBasis
from .report import CheckReport
from .scalars import GaussianRational, ONE, ZERO, as_scalar, axpy, binomial, format_scalar


class RestrictedModuleError(AlgebraError):
    pass


@dataclass(frozen=True)
class AnnLevel:
    """Annihilating level; ``None`` means the corresponding generators all act as zero."""

    h: int | None
    q: int | None


@lru_cache(maxsize=None)
def shift_power(r: int, s: int) -> tuple:
    """Coefficients of (t - s)^r as ((deg, coeff), ...)."""
    return tuple(
        (k, GaussianRational(binomial(r, k) * (-s) ** (r - k))) for k in range(r + 1)
    )


def shift_poly(vec: dict, s: int) -> dict:
    """p(t) -> p(t - s) on a sparse polynomial."""
    out: dict = {}
    for r, c in vec.items():
        axpy(out, dict(shift_power(r, s)), c)
    return out


class RestrictedModule:
    n: int = 0
    kind: str = ""

    def act_basis(self, x: tuple, key) -> dict:
        raise NotImplementedError

    def act(self, x: tuple, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            img = self.act_basis(x, key)
            if img:
                axpy(out, img, c)
        return out

    def ann_level(self) -> AnnLevel:
        raise NotImplementedError

    def basis(self, degree_bound: int) -> list:
        raise NotImplementedError

    def key_degree(self, key) -> int:
        raise NotImplementedError

    def is_key(self, key) -> bool:
        return isinstance(key, int) and key >= 0

    def generators(self, index_bound: int) -> list:
        gens = [("L", k) for k in range(index_bound + 1)]
        gens += [("I", k) for k in range(self.n, index_bound + 1)]
        return gens

    def _check_index(self, x):
        t, k = x
        if is_central(x):
            return
        if t not in ("L", "I") or k < 0 or (t == "I" and k < self.n):
            raise RestrictedModuleError(f"{basis_str(x)} is not in T_{self.n}")

    def key_to_json(self, key) -> str:
        return str(key)

    def key_from_json(self, s: str):
        return int(s)

    def vector_to_json(self, vec: dict) -> dict:
        return {self.key_to_json(k): format_scalar(c) for k, c in sorted(vec.items())}

    def vector_from_json(self, data: dict) -> dict:
        out: dict = {}
        for k, c in data.items():
            axpy(out, {self.key_from_json(k): as_scalar(c)}, 1)
        return out


class OneDim(RestrictedModule):
    kind = "onedim"

    def __init__(self, b, c, n: int = 0):
        self.b = as_scalar(b)
        self.c = as_scalar(c)
        if n not in (0, 1):
            raise RestrictedModuleError("ambient n must be 0 or 1")
        if n == 1 and self.c:
            raise RestrictedModuleError("I_0 is not in T_1; a T_1 one-dimensional module needs c = 0")
        self.n = n

    def __eq__(self, other):
        return isinstance(other, OneDim) and (self.b, self.c, self.n) == (other.b, other.c, other.n)

    def __hash__(self):
        return hash(("onedim", self.b, self.c, self.n))

    def __repr__(self):
        return f"OneDim(b={self.b}, c={self.c})"

    def act_basis(self, x, key):
        self._check_index(x)
        t, k = x
        if t == "L" and k == 0:
            return {0: self.b} if self.b else {}
        if t == "I" and k == 0:
            return {0: self.c} if self.c else {}
        return {}

    def ann_level(self):
        return AnnLevel(0 if self.c else None, 0 if self.b else None)

    def basis(self, degree_bound):
        return [0]

    def key_degree(self, key):
        return 0

    def is_key(self, key):
        return key == 0

    def to_json(self):
        return {"module": "onedim", "b": format_scalar(self.b), "c": format_scalar(self.c), "n": self.n}


@dataclass(frozen=True)
class Character:
    n: int
    psiL1: GaussianRational
    psiL2: GaussianRational
    psiI: GaussianRational
    lambda0: GaussianRational = ZERO

    def __post_init__(self):
        if self.n not in (0, 1):
            raise RestrictedModuleError("ambient n must be 0 or 1")
        for name in ("psiL1", "psiL2", "psiI", "lambda0"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.n == 1 and self.lambda0:
            raise RestrictedModuleError("lambda0 only exists for n = 0")


class Whittaker(RestrictedModule):
    kind = "whittaker"

    def __init__(self, chi: Character | None = None, **kw):
        if chi is None:
            kw.setdefault("n", 0)
            kw.setdefault("psiL1", 0)
            kw.setdefault("psiL2", 0)
            kw.setdefault("psiI", 0)
            kw.setdefault("lambda0", 0)
            chi = Character(**kw)
        self.chi = chi
        self.n = chi.n
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, Whittaker) and self.chi == other.chi

    def __hash__(self):
        return hash(("whittaker", self.chi))

    def __repr__(self):
        c = self.chi
        return f"Whittaker(n={c.n}, psiL1={c.psiL1}, psiL2={c.psiL2}, psiI={c.psiI}, lambda0={c.lambda0})"

    def act_basis(self, x, key):
        ck = (x, key)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        self._check_index(x)
        chi = self.chi
        t, k = x
        out: dict = {}
        if is_central(x):
            pass
        elif t == "L":
            if k == 0:
                out = {key + 1: ONE}
            elif k == 1 and chi.psiL1:
                out = {d: c * chi.psiL1 for d, c in shift_power(key, 1)}
            elif k == 2 and chi.psiL2:
                out = {d: c * chi.psiL2 for d, c in shift_power(key, 2)}
        else:
            if k == 1 and chi.psiI:  # I_1 for n = 0 and n = 1 (ledger)
                out = {d: c * chi.psiI for d, c in shift_power(key, k)}
            elif k == 0 and chi.n == 0 and chi.lambda0:
                out = {key: chi.lambda0}
        out = {d: c for d, c in out.items() if c}
        self._cache[ck] = out
        return out

    def ann_level(self):
        chi = self.chi
        if chi.psiI:
            h = 1
        elif chi.n == 0 and chi.lambda0:
            h = 0
        else:
            h = None
        q = 2 if chi.psiL2 else (1 if chi.psiL1 else 0)
        return AnnLevel(h, q)

    def basis(self, degree_bound):
        return list(range(degree_bound + 1))

    def key_degree(self, key):
        return key

    def to_json(self):
        c = self.chi
        out = {
            "module": "whittaker",
            "n": c.n,
            "psiL1": format_scalar(c.psiL1),
            "psiL2": format_scalar(c.psiL2),
            "psiI": format_scalar(c.psiI),
        }
        if c.n == 0:
            out["lambda0"] = format_scalar(c.lambda0)
        return out


class Formal(RestrictedModule):
    """Free commutative I-symbols up to level h (I-actions only)."""

    kind = "formal"

    def __init__(self, h: int):
        if h < 0:
            raise RestrictedModuleError("level h must be >= 0")
        self.h = h
        self.n = 0

    def __eq__(self, other):
        return isinstance(other, Formal) and self.h == other.h

    def __hash__(self):
        return hash(("formal", self.h))

    def __repr__(self):
        return f"Formal(h={self.h})"

    def act_basis(self, x, key):
        t, k = x
        if t != "I":
            raise RestrictedModuleError(f"formal module supports I_k only, got {basis_str(x)}")
        if k < 0:
            raise RestrictedModuleError(f"{basis_str(x)} is not in T_0")
        if k > self.h:
            return {}
        return {tuple(sorted(key + (k,))): ONE}

    def ann_level(self):
        return AnnLevel(self.h, None)

    def basis(self, degree_bound):
        out = [()]
        frontier = [()]
        for _ in range(degree_bound):
            nxt = []
            for sym in frontier:
                start = sym[-1] if sym else 0
                for j in range(start, self.h + 1):
                    nxt.append(sym + (j,))
            out += nxt
            frontier = nxt
        return out

    def key_degree(self, key):
        return len(key)

    def is_key(self, key):
        return isinstance(key, tuple) and list(key) == sorted(key) and all(0 <= j <= self.h for j in key)

    def generators(self, index_bound):
        return [("I", k) for k in range(index_bound + 1)]

    def key_to_json(self, key):
        return ",".join(str(j) for j in key)

    def key_from_json(self, s):
        return tuple(sorted(int(j) for j in s.split(",") if j != ""))

    def to_json(self):
        return {"module": "formal", "h": self.h}


def restricted_from_json(data: dict) -> RestrictedModule:
    kind = data.get("module")
    if kind == "onedim":
        return OneDim(data["b"], data["c"], int(data.get("n", 0)))
    if kind == "whittaker":
        return Whittaker(
            n=int(data.get("n", 0)),
            psiL1=data.get("psiL1", "0"),
            psiL2=data.get("psiL2", "0"),
            psiI=data.get("psiI", "0"),
            lambda0=data.get("lambda0", "0"),
        )
    if kind == "formal":
        return Formal(int(data["h"]))
    raise RestrictedModuleError(f"unknown restricted module {kind!r}")


def ann_level(handle: RestrictedModule) -> AnnLevel:
    return handle.ann_level()


# ---------------------------------------------------------------- checks


def restriction_check(
    handle: RestrictedModule, index_from: int = 0, index_to: int = 10, probe_degree: int = 5
) -> CheckReport:
    """Generators above the declared level kill every probed basis vector; levels are attained."""
    report = CheckReport(f"restriction[{handle!r}]")
    lvl = handle.ann_level()
    basis = handle.basis(probe_degree)
    i_floor = handle.n if lvl.h is None else lvl.h + 1
    l_floor = 0 if lvl.q is None else lvl.q + 1
    for k in range(index_from, index_to + 1):
        for t, floor in (("I", i_floor), ("L", l_floor)):
            if isinstance(handle, Formal) and t == "L":
                continue
            if t == "I" and k < handle.n:
                continue
            if k < floor:
                continue
            for key in basis:
                report.cases += 1
                if handle.act_basis((t, k), key):
                    return report.fail({"generator": f"{t}:{k}", "vector": str(key)})
    # witnesses for the declared levels
    for t, lv in (("I", lvl.h), ("L", lvl.q)):
        if lv is None or (isinstance(handle, Formal) and t == "L"):
            continue
        report.cases += 1
        if not any(handle.act_basis((t, lv), key) for key in basis):
            return report.fail({"missing_witness": f"{t}:{lv}"})
    return report


def restricted_axiom_check(handle: RestrictedModule, index_bound: int = 5, degree_bound: int = 5) -> CheckReport:
    """x.(y.v) - y.(x.v) == [x, y].v on T_n generators, centrals acting as zero."""
    report = CheckReport(f"restricted_axioms[{handle!r}]")
    gens = handle.generators(index_bound)
    for x in gens:
        for y in gens:
            br = {b: c for b, c in bracket_terms(THV, x, y) if not is_central(b)}
            for key in handle.basis(degree_bound):
                report.cases += 1
                v = {key: ONE}
                lhs = handle.act(x, handle.act(y, v))
                axpy(lhs, handle.act(y, handle.act(x, v)), -1)
                for b, c in br.items():
                    axpy(lhs, handle.act(b, v), -c)
                if lhs:
                    return report.fail({"pair": [basis_str(x), basis_str(y)], "vector": str(key)})
    return report


def ih_injectivity_check(handle: RestrictedModule, degree_bound: int = 5) -> CheckReport:
    """I_h is injective on the degree <= D truncation with a triangular image."""
    report = CheckReport(f"ih_injective[{handle!r}]")
    h = handle.ann_level().h
    if h is None:
        report.status = "error"
        report.details["reason"] = "annihilating level h is absent"
        return report
    eb = EchelonBasis()
    for key in handle.basis(degree_bound):
        report.cases += 1
        img = handle.act_basis(("I", h), key)
        if isinstance(handle, Whittaker):
            # t^k -> psi (t-h)^k: top degree k with nonzero coefficient
            if not img or max(img) != key:
                return report.fail({"vector": str(key), "image": handle.vector_to_json(img)})
        if not eb.add(img):
            return report.fail({"vector": str(key), "reason": "image dependent"})
    return report


def whittaker_span_check(handle: Whittaker, seed: dict, extra_steps: int = 0) -> CheckReport:
    """Shifts of a seed by a nonzero-psi generator span all degrees <= deg(seed)."""
    report = CheckReport(f"whittaker_span[{handle!r}]")
    chi = handle.chi
    shifts = [g for g, v in ((("L", 1), chi.psiL1), (("L", 2), chi.psiL2), (("I", 1), chi.psiI)) if v]
    if not seed or not shifts:
        report.status = "error"
        report.details["reason"] = "needs a nonzero seed and a nonzero character value"
        return report
    v = {k: as_scalar(c) for k, c in seed.items()}
    deg = max(v)
    eb = EchelonBasis()
    eb.add(v)
    g = shifts[0]
    for _ in range(deg + extra_steps):
        v = handle.act(g, v)
        eb.add(v)
    report.cases = deg + 1
    report.details["rank"] = eb.rank
    if eb.rank != deg + 1:
        report.fail({"rank": eb.rank, "expected": deg + 1})
    return report
