"""Checks built on the Omega operators: closed forms, vanishing and separation."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from ..enveloping import omega_build, ue_apply
from ..report import CheckReport
from ..restricted import Formal, RestrictedModule
from ..scalars import ONE, GaussianRational, axpy
from .base import ModuleError
from .tensor import GapParams, MirrorIS, TensorG, TensorModule
from .verma import TensorProduct, Verma


def lemma35_scalar(p: int, h: int) -> int:
    return (-1) ** h * p ** (2 * h) * comb(2 * h, h)


def lemma35_module_check(module: TensorModule, l: int, m: int, i: int, j: int, s: int, keys) -> CheckReport:
    """Omega^(i,j,2h)_{l,m} v(k) = (-1)^h p^{2h} C(2h,h) (I_h^2 v)(pl+k+i+j); zero for s > 2h.

    ``keys`` are basis keys (k, vkey) of the module.
    """
    h = module.h
    p = module.gp.p
    if h is None:
        raise ModuleError("V has no I-annihilating level: I acts as zero on V")
    if s < 2 * h:
        raise ModuleError(f"no closed form for s = {s} < 2h = {2 * h}")
    report = CheckReport(f"lemma35[p={p},h={h},l={l},m={m},i={i},j={j},s={s}]")
    op = omega_build(p, l, m, i, j, s, algebra=module.algebra)
    scalar = GaussianRational(lemma35_scalar(p, h))
    V = module.V
    for key in keys:
        k, vk = key
        if module.gated and not all(module.gp.in_scriptP(t) for t in (k, j + k, i + j + k)):
            raise ModuleError(f"k = {k}: need k, j+k, i+j+k in the P-lattice")
        got = ue_apply(op, {key: ONE}, module.act)
        if s == 2 * h:
            ih2 = V.act(("I", h), V.act_basis(("I", h), vk))
            want = {(p * l + k + i + j, w): c * scalar for w, c in ih2.items()}
        else:
            want = {}
        report.cases += 1
        if got != want:
            return report.fail({"k": k, "v": V.vector_to_json({vk: ONE}), "got": module.vector_to_json(got), "want": module.vector_to_json(want)})
    return report


# ---------------------------------------------------------------- symbolic


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            out[da + db] = out.get(da + db, 0) + ca * cb
    return {d: c for d, c in out.items() if c}


def _ppow(a: dict, e: int) -> dict:
    out = {0: Fraction(1)}
    for _ in range(e):
        out = _pmul(out, a)
    return out


def _padd(acc: dict, a: dict, scale) -> None:
    for d, c in a.items():
        v = acc.get(d, 0) + c * scale
        if v:
            acc[d] = v
        else:
            acc.pop(d, None)


def _sym_I(index: dict, d: int, V: Formal, vec: dict) -> dict:
    """thv tensor I-action on {symbol: poly(m)} with an index polynomial in m."""
    out: dict = {}
    for sym, poly in vec.items():
        for e in range(d, V.h + 1):
            coef = _pmul(poly, _ppow(index, e))
            for sym2 in V.act_basis(("I", e), sym):
                acc = out.setdefault(sym2, {})
                _padd(acc, coef, Fraction(1, factorial(e)))
                if not acc:
                    del out[sym2]
    return out


def omega_symbolic(p: int, h: int, d_i: int, d_j: int, i: int, j: int, l: int, s: int) -> dict:
    """Omega^(i,j,s)_{l,m} v(k) as {I-symbol: polynomial in m}, independent of k."""
    V = Formal(h)
    total: dict = {}
    for k in range(s + 1):
        c = (-1) ** (s - k) * comb(s, k)
        x2 = {0: Fraction(p * k + j), 1: Fraction(p)}
        x1 = {0: Fraction(p * l - p * k + i), 1: Fraction(-p)}
        x2 = {e: v for e, v in x2.items() if v}
        x1 = {e: v for e, v in x1.items() if v}
        vec = _sym_I(x1, d_i, V, _sym_I(x2, d_j, V, {(): {0: Fraction(1)}}))
        for sym, poly in vec.items():
            acc = total.setdefault(sym, {})
            _padd(acc, poly, c)
            if not acc:
                del total[sym]
    return total


def _poly_str(poly: dict) -> str:
    return " + ".join(f"{c}*m^{d}" for d, c in sorted(poly.items(), reverse=True)) or "0"


def lemma35_symbolic_check(p: int, h: int, d_i: int, d_j: int, i: int, j: int, l: int, s: int) -> CheckReport:
    """Omega closed-form identity in the formal module, as a polynomial identity in m.

    s = 2h: constant (-1)^h p^{2h} C(2h,h) on I_h^2; s > 2h: zero; s < 2h:
    the I_h^2 coefficient has degree 2h-s with the predicted leading term and
    every other symbol has lower degree.
    """
    if not (1 <= i <= p - 1 and 1 <= j <= p - 1):
        raise ModuleError(f"need 1 <= i, j <= p-1, got i={i}, j={j}")
    report = CheckReport(f"lemma35_symbolic[p={p},h={h},d=({d_i},{d_j}),i={i},j={j},l={l},s={s}]", cases=1)
    got = omega_symbolic(p, h, d_i, d_j, i, j, l, s)
    shown = {",".join(map(str, k)) or "1": _poly_str(v) for k, v in sorted(got.items())}
    if s == 2 * h:
        want = {(h, h): {0: Fraction(lemma35_scalar(p, h))}}
        if got != want:
            report.fail({"got": shown, "want": {f"{h},{h}": str(lemma35_scalar(p, h))}})
    elif s > 2 * h:
        if got:
            report.fail({"got": shown, "want": "0"})
    else:
        deg = 2 * h - s
        lead = Fraction((-1) ** h * p ** (2 * h) * factorial(2 * h), factorial(h) ** 2 * factorial(deg))
        main = got.get((h, h), {})
        ok = main and max(main) == deg and main[deg] == lead
        ok = ok and all(max(poly) < deg for sym, poly in got.items() if sym != (h, h))
        if not ok:
            report.fail({"got": shown, "want_leading": f"{lead}*m^{deg} on I_{h}^2"})
    return report


# ---------------------------------------------------------------- mirror side


def eq51_check(module: MirrorIS, l: int, m: int, s: int, window: int) -> CheckReport:
    """Omega^(1,1,s)_{l,m} (p = 2) annihilates the basis of A(alpha,beta,gamma,Q) within the window."""
    if s < 1:
        raise ModuleError("Omega vanishing on A is only asserted for s >= 1 (Omega^(1,1,0) acts as gamma)")
    if module.reducible:
        raise ModuleError("A(alpha,beta,gamma,Q) is reducible for these parameters")
    report = CheckReport(f"eq51[l={l},m={m},s={s}]")
    op = omega_build(2, l, m, 1, 1, s)
    for x in module.basis_window(window):
        report.cases += 1
        got = ue_apply(op, {x: ONE}, module.act)
        if got:
            return report.fail({"v": x, "got": module.vector_to_json(got)})
    return report


def prop52_separation(
    V: RestrictedModule,
    a,
    gp: GapParams,
    verma: Verma,
    mirror: MirrorIS,
    l: int,
    m: int,
    window: int = 3,
    degree_bound: int = 2,
) -> CheckReport:
    """Omega^(1,1,2n)_{l,m} kills 1 (x) u on M(c,h,l) (x) A but no probed basis vector of M(V,a,d,P)."""
    n = V.ann_level().h
    if gp.p != 2:
        raise ModuleError("separation is set up for p = 2")
    if n is None or n < 1:
        raise ModuleError("need annihilating level h = n >= 1")
    if not (l > 0 and m > 0 and l - m - n > 0):
        raise ModuleError(f"need l, m > 0 and l - m - n > 0 (l={l}, m={m}, n={n})")
    report = CheckReport(f"prop52[l={l},m={m},n={n}]")
    op = omega_build(2, l, m, 1, 1, 2 * n)
    prod = TensorProduct(verma, mirror)
    for u in mirror.basis_window(window):
        report.cases += 1
        got = ue_apply(op, {((), u): ONE}, prod.act)
        if got:
            return report.fail({"side": "verma (x) mirror", "u": u, "got": prod.vector_to_json(got)})
    N = TensorG(V, a, gp)
    keys = [key for key in N.basis_window(window, degree_bound) if gp.in_scriptP(key[0] + 1) and gp.in_scriptP(key[0] + 2)]
    if not keys:
        raise ModuleError("no probe vectors satisfy k, k+1, k+2 in the P-lattice")
    for key in keys:
        report.cases += 1
        if not ue_apply(op, {key: ONE}, N.act):
            return report.fail({"side": "tensor", "w": N.vector_to_json({key: ONE})})
    report.details = {"probed_products": len(mirror.basis_window(window)), "probed_tensor": len(keys)}
    return report
