import itertools
from math import comb, factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hvgap.algebra import I, L
from hvgap.restricted import Formal, OneDim, Whittaker
from hvgap.scalars import ONE, GaussianRational, parse_scalar
from hvgap.weightmod import (
    GapParams,
    IntermediateG,
    IntermediateT,
    ModuleError,
    TensorG,
    TensorT,
    WeightVector,
    cyclic_span_probe,
    gate_conflicts,
    grading_check,
    iso_map_check,
    lemma35_module_check,
    lemma35_symbolic_check,
    module_axiom_check,
    module_from_json,
    noniso_witness,
    sigma_shift,
    specialization_G_check,
    specialization_T_check,
    thv_d_conflict,
    weight_of,
)

g = GaussianRational
A = parse_scalar("1/3")
AI = parse_scalar("1/3+i")


def vk(k, key=0):
    return {(k, key): ONE}


# ------------------------------------------------------------ thv tensor action


@pytest.mark.parametrize("m, k", [(2, 1), (-3, 0), (0, 4), (5, -5)])
def test_tensorT_onedim_L(m, k):
    b, c = parse_scalar("1/2"), parse_scalar("2+i")
    M = TensorT(OneDim(b, c), A, (0, 0))
    assert M.act(L(m), vk(k)) == {(m + k, 0): A + k + b * m}
    assert M.act(I(m), vk(k)) == {(m + k, 0): c}


def test_tensorT_d_one_kills_onedim():
    M = TensorT(OneDim(1, 3), A, (1, 1))
    assert all(M.act(I(m), vk(k)) == {} for m in range(-4, 5) for k in range(-2, 3))


@pytest.mark.parametrize("m, r, k", [(0, 0, 0), (1, 2, -1), (-2, 3, 2)])
def test_tensorT_whittaker_I(m, r, k):
    W = Whittaker(psiI=1)
    M = TensorT(W, A, (0, 0))
    n = 2 * m + 1
    want = {(n + k, d): c * g(n) for d, c in W.act_basis(I(1), r).items()}
    assert M.act(I(n), vk(k, r)) == want


def test_tensor_centrals_zero():
    M = TensorT(Whittaker(psiI=1, psiL1=1), A, (0, 0))
    assert M.act(("CL", 0), vk(1, 2)) == {}
    N = TensorG(OneDim(1, 2), A, GapParams(3, (0, 0, 0)))
    assert N.act(("C", 1), vk(0)) == {}


# ------------------------------------------------------------ gated gap action


def test_tensorG_gate_closed():
    M = TensorG(OneDim(1, 2), A, GapParams(2, (0, 0), frozenset({0})))
    assert all(M.act(I(2 * m + 1), vk(k)) == {} for m in range(-3, 4) for k in range(-4, 5, 2))


def test_tensorG_full_P_onedim():
    M = TensorG(OneDim(1, 5), A, GapParams(2, (0, 0)))
    for m in range(-3, 4):
        assert M.act(I(2 * m + 1), vk(2)) == {(2 * m + 3, 0): g(5)}


def test_tensorG_p3_partial_gate():
    M = TensorG(OneDim(1, 5), A, GapParams(3, (0, 0, 0), frozenset({0, 1})))
    for m in range(-2, 3):
        assert M.act(I(3 * m + 1), vk(0)) == {(3 * m + 1, 0): g(5)}
        assert M.act(I(3 * m + 2), vk(0)) == {}


def test_tensorG_rejects_off_lattice_key():
    M = TensorG(OneDim(1, 5), A, GapParams(3, (0, 0, 0), frozenset({0, 1})))
    with pytest.raises(ModuleError):
        M.act(L(0), vk(2))
    with pytest.raises(ModuleError):
        M.act(L(0), vk(0, 1))


# ------------------------------------------------------------ weights


def test_weight_of():
    M = TensorT(OneDim(1, 2), parse_scalar("1/2"), (0, 0))
    assert weight_of(M, vk(3)) == [(parse_scalar("7/2"), vk(3))]
    assert weight_of(M, vk(0))[0][0] == parse_scalar("1/2")
    assert len(weight_of(M, {(0, 0): ONE, (2, 0): g(3)})) == 2


def test_weight_vector_json_roundtrip():
    M = TensorG(Whittaker(psiI=1, psiL1=1), AI, GapParams(2, (0, 0)))
    w = WeightVector(M, {(1, 2): parse_scalar("1/2"), (-3, 0): g(4)})
    back = WeightVector.from_json(w.to_json())
    assert back == w
    assert module_from_json(M.descriptor()).descriptor() == M.descriptor()


# ------------------------------------------------------------ module axioms


def test_axioms_examples():
    assert module_axiom_check(TensorT(OneDim(1, 1), A, (0, 0)), 5, 4).ok
    gp = GapParams(3, (0, 1, 0), frozenset({0, 2}))
    assert module_axiom_check(TensorG(Whittaker(psiL1=1, lambda0=1), parse_scalar("i"), gp), 4, 3, 3).ok


def test_axioms_pass_where_no_defect():
    for V in (Whittaker(psiI=1, psiL1=1, psiL2=2), OneDim(parse_scalar("1/2"), 2)):
        for d in itertools.product((0, 1), repeat=2):
            if thv_d_conflict(d, V):
                continue
            assert module_axiom_check(TensorT(V, AI, d), 3, 2, 2).ok, d


@pytest.mark.parametrize(
    "V, d",
    [(OneDim(1, 2), (0, 1)), (Whittaker(lambda0=1, psiL1=1), (1, 0))],
)
def test_thv_nonconstant_d_defect(V, d):
    # I_0 acts nonzero on V and d is not constant: the defining formulas fail
    assert thv_d_conflict(d, V)
    rep = module_axiom_check(TensorT(V, A, d), 3, 2, 1)
    assert rep.status == "fail"
    assert rep.counterexample["x"] and rep.counterexample["y"]


def test_gate_defect_predicted():
    gp = GapParams(3, (0, 0, 0), frozenset({0, 2}))
    V = Whittaker(psiI=1)
    assert gate_conflicts(gp, V)
    assert module_axiom_check(TensorG(V, A, gp), 4, 3, 2).status == "fail"
    assert not gate_conflicts(GapParams(2, (0, 0), frozenset({1})), V)


def test_grading():
    M = TensorG(Whittaker(psiI=1, psiL2=1), AI, GapParams(3, (0, 0, 1)))
    assert grading_check(M, 4, 3, 2).ok


def test_d_compatibility_rejected():
    with pytest.raises(ModuleError):
        TensorT(Whittaker(n=1, psiI=1), A, (0, 0))


# ------------------------------------------------------------ Omega closed form


def test_lemma35_module_h0():
    c = parse_scalar("2+i")
    M = TensorG(OneDim(1, c), A, GapParams(2, (0, 0)))
    keys = M.basis_window(3)
    for l, m in itertools.product(range(-2, 3), repeat=2):
        assert lemma35_module_check(M, l, m, 1, 1, 0, keys).ok
        assert lemma35_module_check(M, l, m, 1, 1, 1, keys).ok
    from hvgap.enveloping import omega_build, ue_apply

    got = ue_apply(omega_build(2, 1, 0, 1, 1, 0), vk(1), M.act)
    assert got == {(5, 0): c * c}


def test_lemma35_module_h1():
    W = Whittaker(psiI=1)
    M = TensorG(W, A, GapParams(2, (0, 0)))
    from hvgap.enveloping import omega_build, ue_apply

    for l, m, r, k in [(0, 0, 0, 0), (1, -2, 2, 3), (-2, 1, 1, -1)]:
        got = ue_apply(omega_build(2, l, m, 1, 1, 2), vk(k, r), M.act)
        shifted = W.act(I(1), W.act_basis(I(1), r))
        # (-1)^1 2^2 C(2,1) = -8
        assert got == {(2 * l + k + 2, d): c * g(-8) for d, c in shifted.items()}
    assert lemma35_module_check(M, 1, 1, 1, 1, 3, M.basis_window(2, 2)).ok


def test_lemma35_module_preconditions():
    M = TensorG(Whittaker(psiL1=1), A, GapParams(2, (0, 0)))
    with pytest.raises(ModuleError):
        lemma35_module_check(M, 0, 0, 1, 1, 2, M.basis_window(1))
    N = TensorG(Whittaker(psiI=1), A, GapParams(2, (0, 0)))
    with pytest.raises(ModuleError):
        lemma35_module_check(N, 0, 0, 1, 1, 1, N.basis_window(1))


def sympy_omega(p, h, di, dj, i, j, l, s):
    """Independent expansion: {(a, b): poly in m} for Omega v(k) in a formal module."""
    m = sympy.Symbol("m")
    out = {}
    for k in range(s + 1):
        coeff = (-1) ** (s - k) * comb(s, k)
        X = p * l - p * m - p * k + i
        Y = p * m + p * k + j
        for e in range(dj, h + 1):
            for f in range(di, h + 1):
                term = coeff * Y**e / factorial(e) * X**f / factorial(f)
                key = tuple(sorted((e, f)))
                out[key] = out.get(key, 0) + term
    return {key: sympy.Poly(sympy.expand(v), m) for key, v in out.items() if sympy.expand(v) != 0}


def closed_form_holds(p, h, di, dj, i, j, l, s):
    got = sympy_omega(p, h, di, dj, i, j, l, s)
    if s > 2 * h:
        return not got
    scalar = (-1) ** h * p ** (2 * h) * comb(2 * h, h)
    return set(got) == {(h, h)} and got[(h, h)].as_expr() == scalar


def test_lemma35_symbolic_examples():
    assert lemma35_symbolic_check(2, 1, 0, 0, 1, 1, 0, 2).ok
    assert lemma35_symbolic_check(3, 2, 1, 0, 1, 2, 1, 4).ok
    assert (-1) ** 2 * 3**4 * comb(4, 2) == 486
    for di, dj in itertools.product((0, 1), repeat=2):
        assert lemma35_symbolic_check(2, 0, di, dj, 1, 1, 0, 1).ok


@pytest.mark.parametrize("p, h", [(2, 0), (2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_lemma35_symbolic_against_sympy(p, h):
    for di, dj in itertools.product((0, 1), repeat=2):
        for i, j in itertools.product(range(1, p), repeat=2):
            for l in (-1, 0, 2):
                for s in (2 * h, 2 * h + 1, 2 * h + 2):
                    want = closed_form_holds(p, h, di, dj, i, j, l, s)
                    assert lemma35_symbolic_check(p, h, di, dj, i, j, l, s).ok == want, (di, dj, i, j, l, s)


def test_lemma35_h0_gap():
    # h = 0 with d_i = 1: every I-sum is empty, Omega vanishes, the closed form does not
    assert sympy_omega(2, 0, 1, 0, 1, 1, 0, 0) == {}
    assert not lemma35_symbolic_check(2, 0, 1, 0, 1, 1, 0, 0).ok


# ------------------------------------------------------------ intermediate series


def test_intermediateT_examples():
    c = parse_scalar("3")
    M = IntermediateT(1, 2, c)
    assert M.act(L(2), {0: ONE}) == {2: g(5)}
    assert M.act(I(-3), {1: ONE}) == {-2: c}
    assert M.act(L(0), {4: ONE}) == {4: g(5)}


def test_intermediateG_examples():
    gp = GapParams(2, (1, 0), frozenset({0, 1}))
    M = IntermediateG(A, 1, 2, gp)
    assert M.act(I(1), {0: ONE}) == {1: g(2)}
    gp3 = GapParams(3, (0, 1, 0))
    N = IntermediateG(A, 1, 2, gp3)
    assert N.act(I(1), {0: ONE}) == {}
    assert N.act(I(2), {0: ONE}) == {2: g(2)}
    assert N.act(L(3), {1: ONE}) == {4: A + 1 + 3}


def test_intermediateG_constraints():
    with pytest.raises(ModuleError):
        IntermediateG(A, 1, 2, GapParams(2, (0, 1)))
    with pytest.raises(ModuleError):
        IntermediateG(A, 1, 2, GapParams(3, (0, 0, 1), frozenset({0})))


def test_specialization():
    assert specialization_T_check(A, parse_scalar("1/2"), 2, 6).ok
    assert specialization_T_check(AI, 0, parse_scalar("i"), 6).ok
    assert specialization_G_check(A, 1, 2, GapParams(2, (0, 0)), 6).ok
    assert specialization_G_check(AI, 1, 2, GapParams(3, (1, 0, 1)), 6).ok


# ------------------------------------------------------------ isomorphisms


def test_sigma_shift():
    assert sigma_shift({0, 2}, 1, 3) == frozenset({0, 1})
    assert sigma_shift({0, 2}, 0, 3) == frozenset({0, 2})
    assert sigma_shift({1, 2}, 3, 3) == frozenset({1, 2})
    assert sigma_shift({1}, -1, 3) == frozenset({0})


def identity(vec):
    return dict(vec)


def test_iso_identity():
    M = TensorG(Whittaker(psiI=1, psiL1=1), AI, GapParams(2, (0, 0)))
    assert iso_map_check(M, M, identity, 3, 2, 2).ok


def test_iso_shift():
    V = OneDim(parse_scalar("1/2"), 2)
    gp = GapParams(3, (0, 0, 0), frozenset({0, 2}))
    src = TensorG(V, A, gp)
    dst = TensorG(V, A - 1, GapParams(3, (0, 0, 0), sigma_shift(gp.P, 1, 3)))
    assert iso_map_check(src, dst, identity, 4, 3).ok


def test_iso_bad_psi_fails():
    W = Whittaker(psiL1=1, psiI=1)
    M = TensorT(W, A, (0, 0))

    def scale_t(vec):
        # v -> t v does not commute with L_1
        return W.act(L(0), vec)

    rep = iso_map_check(M, M, scale_t, 2, 1, 2)
    assert rep.status == "fail"


def test_noniso_examples():
    V = OneDim(1, 2)
    gp = GapParams(3, (0, 0, 0), frozenset({0}))
    rep = noniso_witness(TensorG(V, 0, GapParams(2, (0, 0))), TensorG(V, parse_scalar("1/2"), GapParams(2, (0, 0))))
    assert rep.status == "fail" and "a-b in Z" in rep.counterexample["failed"]
    rep = noniso_witness(TensorG(V, 1, gp), TensorG(V, 0, gp))
    assert rep.status == "fail" and "Q = sigma^(a-b)(P)" in rep.counterexample["failed"]
    assert noniso_witness(TensorG(V, 1, gp), TensorG(V, 1, gp)).ok


# ------------------------------------------------------------ span probe


def test_probe_intermediate():
    rep = cyclic_span_probe(IntermediateT(A, 1, 2), {0: ONE}, 4, 4)
    assert rep.ok and rep.details["ratio"] == "1"


def test_probe_whittaker_tensor():
    M = TensorG(Whittaker(psiI=1), A, GapParams(2, (0, 0)))
    rep = cyclic_span_probe(M, vk(0), 4, 3, 2, margin=2)
    assert rep.ok


def test_probe_degenerate():
    rep = cyclic_span_probe(IntermediateT(0, 0, 0), {0: ONE}, 4, 3)
    assert rep.status == "fail"
    assert rep.details["rank"] < rep.details["box_dim"]


@given(st.integers(-3, 3), st.integers(1, 4))
def test_probe_rank_bounded(k, c):
    rep = cyclic_span_probe(IntermediateT(A, 1, c), {k: ONE}, 3, 3)
    assert rep.details["rank"] <= rep.details["box_dim"]


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3), st.integers(0, 3))
def test_commutator_property(m, n, k, r):
    M = TensorT(Whittaker(psiI=parse_scalar("1/2"), psiL1=1, psiL2=parse_scalar("i")), AI, (1, 0))
    from hvgap.algebra import THV, bracket_terms, is_central

    for x, y in ((L(m), L(n)), (L(m), I(n)), (I(m), I(n))):
        v = vk(k, r)
        total = M.act(x, M.act(y, v))
        for key, c in M.act(y, M.act(x, v)).items():
            total[key] = total.get(key, g(0)) - c
        for z, coeff in bracket_terms(THV, x, y):
            if is_central(z):
                continue
            for key, c in M.act(z, v).items():
                total[key] = total.get(key, g(0)) - c * coeff
        assert not any(total.values())
