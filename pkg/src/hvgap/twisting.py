"""Non-weight modules obtained by twisting L_m with a Laurent polynomial of I's.

On a module M the twisted action is ``L_m o v = (L_m + sum_i a_i I_{m+i}) . v``
with ``I_m o v = I_m . v``.  For alpha = sum_i (a_i / i) I_i the automorphism
exp(ad alpha) sends L_m to ``L_m - sum_i a_i I_{m+i}`` modulo centrals, so the
twist above is the pull-back along exp(ad(-alpha)).
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import THV, Algebra, LieElement, basis_str, basis_within, bracket_basis, bracket_linear, is_central
from .enveloping import laurent, laurent_to_json, theta_image
from .report import CheckReport
from .scalars import ONE, GaussianRational, axpy
from .weightmod import (
    Module,
    ModuleError,
    TensorG,
    TensorT,
    Twisted,
    cyclic_span_probe,
    module_axiom_check,
)

__all__ = [
    "Twisted",
    "exp_ad",
    "nondiagonal_witness",
    "theta_consistency_check",
    "twist_inverse_check",
    "twisted_act_G",
    "twisted_act_T",
    "twisted_axiom_and_probe",
]


def twisted_act_T(f, base: TensorT, x: tuple, vec: dict) -> dict:
    if not isinstance(base, TensorT):
        raise ModuleError("twisted_act_T needs a tensorT base")
    return Twisted(base, f).act(x, vec)


def twisted_act_G(g, base: TensorG, x: tuple, vec: dict) -> dict:
    if not isinstance(base, TensorG):
        raise ModuleError("twisted_act_G needs a tensorG base")
    return Twisted(base, g).act(x, vec)


def _alpha(f, algebra: Algebra) -> LieElement:
    f = laurent(f)
    if 0 in f:
        raise ModuleError("alpha = sum a_i/i I_i needs 0 outside the support")
    return LieElement(algebra, {("I", i): a * GaussianRational(Fraction(1, i)) for i, a in f.items()})


def exp_ad(alpha: LieElement, x: LieElement, max_terms: int = 8) -> tuple:
    """exp(ad alpha)(x) and the number of nonzero iterated brackets used."""
    total = x
    term = x
    used = 0
    for n in range(1, max_terms + 1):
        term = bracket_linear(alpha, term) * GaussianRational(Fraction(1, n))
        if not term:
            return total, used
        used = n
        total = total + term
    raise ModuleError("exp(ad alpha) did not terminate")


def theta_consistency_check(f, index_bound: int, algebra: Algebra = THV) -> CheckReport:
    """exp(ad alpha)(L_m) = theta_image(-f)(L_m) mod centrals; exp(ad alpha) preserves brackets."""
    report = CheckReport(f"theta_consistency[f={laurent_to_json(laurent(f))}]")
    alpha = _alpha(f, algebra)
    neg = {i: -a for i, a in laurent(f).items()}
    gens = basis_within(algebra, index_bound)
    images = {}
    max_used = 0
    for x in gens:
        img, used = exp_ad(alpha, LieElement(algebra, {x: ONE}))
        max_used = max(max_used, used)
        images[x] = img
        if used > 2:
            return report.fail({"x": basis_str(x), "reason": "third iterated bracket is nonzero"})
        report.cases += 1
        want = theta_image(neg, x, algebra) if not is_central(x) else LieElement(algebra, {x: ONE})
        if img.without_centrals() != want.without_centrals():
            return report.fail({"x": basis_str(x), "got": str(img), "want": str(want)})
    for ix, x in enumerate(gens):
        for y in gens[ix + 1 :]:
            report.cases += 1
            lhs, _ = exp_ad(alpha, bracket_basis(algebra, x, y))
            rhs = bracket_linear(images[x], images[y])
            if lhs != rhs:
                return report.fail({"x": basis_str(x), "y": basis_str(y), "lhs": str(lhs), "rhs": str(rhs)})
    report.details = {"index_bound": index_bound, "max_iterated_brackets": max_used, "exact": True}
    return report


def twisted_axiom_and_probe(
    f,
    base: Module,
    gen_bound: int = 4,
    support_bound: int = 3,
    degree_bound: int = 2,
    seed: dict | None = None,
    probe_window: int = 3,
    margin: int = 3,
) -> CheckReport:
    tw = Twisted(base, f)
    report = module_axiom_check(tw, gen_bound, support_bound, degree_bound, name="twisted_axiom_and_probe")
    if not report.ok:
        return report
    seed = seed or {tw.basis_window(0, 0)[0]: ONE}
    probe = cyclic_span_probe(tw, seed, gen_bound, probe_window, degree_bound, margin=margin)
    report.merge(probe)
    report.details = {"axioms": dict(report.details), "probe": probe.details}
    return report


def twist_inverse_check(f, base: Module, gen_bound: int, window: int, degree_bound: int = 0) -> CheckReport:
    """Twisting by f and then by -f gives back the base action."""
    report = CheckReport("twist_inverse")
    back = Twisted(Twisted(base, f), {i: -a for i, a in laurent(f).items()})
    for x in base.generators(gen_bound):
        for key in base.basis_window(window, degree_bound):
            report.cases += 1
            if back.act_basis(x, key) != base.act_basis(x, key):
                return report.fail({"x": basis_str(x), "w": base.vector_to_json({key: ONE})})
    return report


def nondiagonal_witness(f, base: Module, window: int, degree_bound: int = 0) -> CheckReport:
    """Find a basis vector v(k) whose image under twisted L_0 leaves weight k.

    pass means a witness was found (the twisted L_0 is not diagonal in the
    weight basis of the base module).
    """
    report = CheckReport("nondiagonal_witness")
    tw = Twisted(base, f)
    for key in base.basis_window(window, degree_bound):
        report.cases += 1
        img = tw.act_basis(("L", 0), key)
        stray = {k: c for k, c in img.items() if base.weight_index(k) != base.weight_index(key)}
        if stray:
            report.details = {"w": base.vector_to_json({key: ONE}), "stray": base.vector_to_json(stray)}
            return report
    return report.fail({"reason": "twisted L_0 preserves every probed weight space"})
