import pytest
from hypothesis import given
from hypothesis import strategies as st

from hvgap.algebra import THV, I, L, LieElement, gap
from hvgap.restricted import OneDim, Whittaker
from hvgap.scalars import ONE, GaussianRational, parse_scalar
from hvgap.twisting import (
    Twisted,
    exp_ad,
    nondiagonal_witness,
    theta_consistency_check,
    twist_inverse_check,
    twisted_act_G,
    twisted_act_T,
    twisted_axiom_and_probe,
)
from hvgap.weightmod import GapParams, ModuleError, TensorG, TensorT, cyclic_span_probe, module_axiom_check
from hvgap.weightmod.tensor import IntermediateT

g = GaussianRational
A = parse_scalar("1/3")


def vk(k, key=0):
    return {(k, key): ONE}


def add(*vecs):
    out = {}
    for v in vecs:
        for k, c in v.items():
            out[k] = out.get(k, g(0)) + c
    return {k: c for k, c in out.items() if c}


def test_zero_twist_is_untwisted():
    base = TensorT(Whittaker(psiI=1, psiL1=1), A, (0, 0))
    for x in (L(2), L(-1), I(3)):
        for key in base.basis_window(2, 2):
            assert twisted_act_T({}, base, x, {key: ONE}) == base.act(x, {key: ONE})


def test_twist_x():
    base = TensorT(Whittaker(psiI=1, lambda0=2), A, (0, 0))
    for k in (-1, 0, 3):
        v = vk(k, 1)
        assert twisted_act_T({1: 1}, base, L(0), v) == add(base.act(L(0), v), base.act(I(1), v))


def test_twist_inverse_x_over_onedim():
    b, c = parse_scalar("1/2"), parse_scalar("3")
    base = TensorT(OneDim(b, c), A, (0, 0))
    for k in (-2, 0, 1):
        want = {(1 + k, 0): A + k + b, (k, 0): 2 * c}
        assert twisted_act_T({-1: 2}, base, L(1), vk(k)) == want


def test_gap_twists():
    base2 = TensorG(Whittaker(psiI=1, psiL2=1), A, GapParams(2, (0, 0)))
    v = vk(2, 1)
    assert twisted_act_G({1: 1}, base2, L(2), v) == add(base2.act(L(2), v), base2.act(I(3), v))
    assert twisted_act_G({1: 1}, base2, I(3), v) == base2.act(I(3), v)
    base3 = TensorG(OneDim(1, 5), A, GapParams(3, (0, 0, 0), frozenset({0, 1})))
    assert twisted_act_G({2: 1}, base3, L(0), vk(0)) == {(0, 0): A}
    assert twisted_act_G({2: 1}, base3, L(0), vk(1)) == {(1, 0): A + 1, (3, 0): g(5)}


def test_gap_support_rejected():
    base = TensorG(OneDim(1, 2), A, GapParams(2, (0, 0)))
    with pytest.raises(ModuleError):
        Twisted(base, {2: 1})
    with pytest.raises(ModuleError):
        twisted_act_G({1: 1}, TensorT(OneDim(1, 2), A, (0, 0)), L(0), vk(0))


def test_theta_examples():
    a1 = parse_scalar("3/2")
    alpha = LieElement(THV, {I(1): a1})
    for m in range(-3, 4):
        img, used = exp_ad(alpha, LieElement(THV, {L(m): ONE}))
        assert img.without_centrals() == LieElement(THV, {L(m): ONE, I(m + 1): -a1})
        assert used <= 2
    img, _ = exp_ad(alpha, LieElement(THV, {I(2): ONE}))
    assert img.without_centrals() == LieElement(THV, {I(2): ONE})


@pytest.mark.parametrize("f", [{1: 1}, {-2: parse_scalar("1/2"), 1: parse_scalar("i"), 2: 3}, {-1: -1}])
def test_theta_consistency(f):
    rep = theta_consistency_check(f, 5)
    assert rep.ok
    assert rep.details["max_iterated_brackets"] == 2


def test_theta_rejects_zero_support():
    with pytest.raises(ModuleError):
        theta_consistency_check({0: 1}, 3)


def test_twisted_axioms_examples():
    rep = twisted_axiom_and_probe({1: 1, -1: -1}, TensorT(OneDim(1, 1), A, (0, 0)), 4, 3, 0)
    assert rep.ok
    rep = twisted_axiom_and_probe({1: 1}, TensorG(Whittaker(psiI=1, psiL1=1), A, GapParams(2, (0, 0))), 3, 2, 2)
    assert rep.ok


def test_zero_twist_probe_matches():
    base = IntermediateT(A, 1, 2)
    seed = {0: ONE}
    tw = cyclic_span_probe(Twisted(base, {}), seed, 3, 3)
    plain = cyclic_span_probe(base, seed, 3, 3)
    assert tw.details["rank"] == plain.details["rank"]
    assert tw.status == plain.status


def test_twisted_with_zero_in_support():
    base = TensorT(Whittaker(psiI=1, lambda0=2, psiL1=1), A, (0, 0))
    assert module_axiom_check(Twisted(base, {0: parse_scalar("i"), 2: 1}), 3, 2, 2).ok


def test_twist_inverse():
    base = TensorT(Whittaker(psiI=1, lambda0=2), A, (0, 0))
    assert twist_inverse_check({-2: 1, 0: 3, 1: parse_scalar("1/2")}, base, 4, 2, 2).ok


def test_nondiagonal():
    base = TensorT(OneDim(1, 2), A, (0, 0))
    rep = nondiagonal_witness({1: 1}, base, 2)
    assert rep.ok and rep.details["stray"]
    # the twist term I_1 kills OneDim when d = 1, so L_0 stays diagonal
    assert nondiagonal_witness({1: 1}, TensorT(OneDim(1, 2), A, (1, 1)), 2).status == "fail"


def test_twisted_json():
    from hvgap.weightmod import module_from_json

    tw = Twisted(TensorT(OneDim(1, 2), A, (0, 0)), {1: parse_scalar("1/2"), -1: 1})
    desc = tw.descriptor()
    assert desc["module"] == "twisted"
    assert module_from_json(desc).descriptor() == desc
    assert not tw.is_weight_module


@given(st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=3), st.integers(-3, 3), st.integers(-3, 3))
def test_twisted_commutator_property(f, m, k):
    base = TensorT(Whittaker(psiI=1, lambda0=parse_scalar("1/2"), psiL1=1), A, (0, 0))
    tw = Twisted(base, f)
    from hvgap.algebra import bracket_terms, is_central

    for x, y in ((L(m), L(1 - m)), (L(m), I(k))):
        v = vk(k, 1)
        total = tw.act(x, tw.act(y, v))
        for key, c in tw.act(y, tw.act(x, v)).items():
            total[key] = total.get(key, g(0)) - c
        for z, coeff in bracket_terms(THV, x, y):
            if not is_central(z):
                for key, c in tw.act(z, v).items():
                    total[key] = total.get(key, g(0)) - c * coeff
        assert not any(total.values())
