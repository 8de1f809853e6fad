"""Exhaustive finite-window checks on weight modules."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..algebra import basis_str, bracket_terms, degree, is_central
from ..linalg import EchelonBasis
from ..report import CheckReport, timed
from ..restricted import OneDim
from ..scalars import ONE, axpy, format_scalar
from .base import Module, ModuleError
from .tensor import GapParams, IntermediateG, IntermediateT, TensorG, TensorModule, TensorT, sigma_shift


def weight_of(module: Module, vec: dict) -> list:
    """Group a vector by L_0-eigenvalue and confirm L_0 reproduces each group.

    Returns ``[(eigenvalue, component), ...]`` sorted by weight index.
    """
    groups: dict = {}
    for key, c in vec.items():
        groups.setdefault(module.weight_index(key), {})[key] = c
    out = []
    for idx in sorted(groups):
        comp = groups[idx]
        ev = module.eigenvalue(next(iter(comp)))
        img = module.act(("L", 0), comp)
        if img != {k: c * ev for k, c in comp.items() if c * ev}:
            raise ModuleError(f"L_0 does not act by {format_scalar(ev)} on weight component {idx}")
        out.append((ev, comp))
    return out


def module_axiom_check(
    module: Module, gen_bound: int, support_bound: int, degree_bound: int = 0, name: str | None = None
) -> CheckReport:
    """x.(y.w) - y.(x.w) == [x,y].w over generator pairs and window basis vectors.

    Unordered pairs suffice: the identity for (y, x) is the negative of the
    one for (x, y), and x = y is trivially zero.
    """
    report = CheckReport(name or f"module_axioms[{module.kind}]")
    report.details = {"gen_bound": gen_bound, "support_bound": support_bound, "degree_bound": degree_bound}
    gens = module.generators(gen_bound)
    basis = module.basis_window(support_bound, degree_bound)
    alg = module.algebra
    with timed(report):
        for ix, x in enumerate(gens):
            for y in gens[ix + 1 :]:
                br = bracket_terms(alg, x, y)
                for w in basis:
                    lhs = dict(module.act(x, module.act_basis(y, w)))
                    axpy(lhs, module.act(y, module.act_basis(x, w)), -1)
                    for z, cz in br:
                        axpy(lhs, module.act_basis(z, w), -cz)
                    report.cases += 1
                    if lhs:
                        return report.fail(
                            {
                                "x": basis_str(x),
                                "y": basis_str(y),
                                "w": module.vector_to_json({w: ONE}),
                                "residual": module.vector_to_json(lhs),
                            }
                        )
    return report


def grading_check(module: Module, gen_bound: int, support_bound: int, degree_bound: int = 0) -> CheckReport:
    """Each generator of degree g maps weight index k into weight index k + g."""
    report = CheckReport(f"grading[{module.kind}]")
    for x in module.generators(gen_bound):
        g = 0 if is_central(x) else int(degree(x))
        for w in module.basis_window(support_bound, degree_bound):
            report.cases += 1
            target = module.weight_index(w) + g
            bad = [k for k in module.act_basis(x, w) if module.weight_index(k) != target]
            if bad:
                return report.fail({"x": basis_str(x), "w": repr(w), "stray": repr(bad[0])})
    return report


def _compare_actions(report, gens, keys, act_a, act_b, key_map=lambda k: k):
    for x in gens:
        for k in keys:
            report.cases += 1
            a = {key_map(kk): c for kk, c in act_a(x, k).items()}
            b = act_b(x, k)
            if a != b:
                report.fail({"x": basis_str(x), "k": repr(k)})
                return report
    return report


def specialization_T_check(a, b, c, bound: int = 6) -> CheckReport:
    """Tensor construction over OneDim{b,c} with d = 0 equals A_{a,b,c} termwise."""
    report = CheckReport("specialization_T")
    mt = TensorT(OneDim(b, c), a, (0, 0))
    mi = IntermediateT(a, b, c)
    gens = [g for g in mi.generators(bound)]
    keys = list(range(-bound, bound + 1))
    return _compare_actions(report, gens, keys, lambda x, k: mt.act_basis(x, (k, 0)), mi.act_basis, lambda kk: kk[0])


def specialization_G_check(a, b, c, gp: GapParams, bound: int = 6) -> CheckReport:
    """Tensor construction over OneDim{b,c} equals V(a,b,F), F_{i,j} = c [d_i = 0][j in P]."""
    report = CheckReport(f"specialization_G[p={gp.p},d={list(gp.d)},P={sorted(gp.P)}]")
    mt = TensorG(OneDim(b, c), a, gp)
    mi = IntermediateG(a, b, c, gp)
    gens = mi.generators(bound * gp.p)
    keys = mi.basis_window(bound)
    return _compare_actions(report, gens, keys, lambda x, k: mt.act_basis(x, (k, 0)), mi.act_basis, lambda kk: kk[0])


# ---------------------------------------------------------------- isomorphisms


def iso_map_check(
    src: TensorModule,
    dst: TensorModule,
    psi: Callable[[dict], dict],
    gen_bound: int,
    window: int,
    degree_bound: int = 0,
) -> CheckReport:
    """phi(v(k)) = psi(v)(k + a - b) intertwines src = M(V,a,..) and dst = M(W,b,..)."""
    report = CheckReport("iso_map")
    diff = src.a - dst.a
    if not diff.is_integer():
        return report.fail({"precondition": "a - b in Z", "a-b": format_scalar(diff)})
    shift = int(diff.re)
    if src.gated or dst.gated:
        want = sigma_shift(src.gp.P, shift, src.gp.p)
        if src.gp.p != dst.gp.p or dst.gp.P != want:
            return report.fail(
                {"precondition": "Q = sigma^(a-b)(P)", "Q": sorted(dst.gp.P), "sigma^(a-b)(P)": sorted(want)}
            )

    def phi(vec: dict) -> dict:
        out: dict = {}
        for (k, v), c in vec.items():
            for w, cw in psi({v: ONE}).items():
                axpy(out, {(k + shift, w): cw}, c)
        return out

    report.details = {"shift": shift, "gen_bound": gen_bound, "window": window}
    for x in src.generators(gen_bound):
        for key in src.basis_window(window, degree_bound):
            report.cases += 1
            lhs = phi(src.act_basis(x, key))
            rhs = dst.act(x, phi({key: ONE}))
            if lhs != rhs:
                return report.fail({"x": basis_str(x), "w": src.vector_to_json({key: ONE})})
    return report


def noniso_witness(A: TensorModule, B: TensorModule) -> CheckReport:
    """Evaluate the necessary conditions for M(V,a,..) ~ M(W,b,..).

    A failed condition certifies non-isomorphism; all passing is inconclusive.
    """
    if type(A) is not type(B):
        raise ModuleError("noniso_witness compares two tensorT or two tensorG descriptors")
    report = CheckReport("noniso_witness")
    la, lb = A.V.ann_level(), B.V.ann_level()
    diff = A.a - B.a
    cond: dict = {"a-b in Z": diff.is_integer(), "h = n": la.h == lb.h, "q = t": la.q == lb.q}
    if A.gated:
        same_p = A.gp.p == B.gp.p
        if cond["a-b in Z"] and same_p:
            cond["Q = sigma^(a-b)(P)"] = B.gp.P == sigma_shift(A.gp.P, int(diff.re), A.gp.p)
        else:
            cond["Q = sigma^(a-b)(P)"] = False
        idx = sorted(A.gp.PminusP)
        cond["d_i = e_i on P-P"] = same_p and all(A.gp.d[i] == B.gp.d[i] for i in idx)
    else:
        cond["d = e"] = A.gp.d == B.gp.d
    report.cases = len(cond)
    report.details = {"conditions": cond}
    failed = [k for k, ok in cond.items() if not ok]
    if failed:
        report.fail({"failed": failed})
    return report


# ---------------------------------------------------------------- span probe


def cyclic_span_probe(
    module: Module,
    seed: dict,
    gen_bound: int,
    window: int,
    degree_bound: int = 0,
    max_depth: int = 50,
    weight_split: bool | None = None,
    margin: int = 0,
) -> CheckReport:
    """Dimension of the cyclic submodule generated by ``seed`` inside a finite box.

    The box is ``module.basis_window(window, degree_bound)``; vectors are
    generated inside the box enlarged by ``margin`` in both the weight window
    and the degree bound.  For a
    weight module each generated vector is split into weight components (a
    submodule contains them).  A piece not lying entirely inside the
    generation box is discarded, never truncated, so the span found is a true
    subspace of the cyclic submodule.  The reported rank is the dimension of
    its intersection with the span of the box; ``status`` is pass iff the
    ratio rank / dim(box) is 1.
    """
    if not seed:
        raise ModuleError("seed must be nonzero")
    split = module.is_weight_module if weight_split is None else weight_split
    box = module.basis_window(window, degree_bound)
    inner = set(box)
    gen_box = module.basis_window(window + margin, degree_bound + margin) if margin else box
    pos = {}
    for key in gen_box:
        if key not in inner:
            pos[key] = len(pos)
    for key in box:
        pos[key] = len(pos)
    gens = [g for g in module.generators(gen_bound) if not is_central(g)]
    report = CheckReport(f"span_probe[{module.kind}]")

    def pieces(vec):
        if not split:
            return [vec] if vec and all(k in pos for k in vec) else []
        groups: dict = {}
        for k, c in vec.items():
            groups.setdefault(module.weight_index(k), {})[k] = c
        return [g for g in groups.values() if all(k in pos for k in g)]

    eb = EchelonBasis(order=pos.__getitem__)

    def inner_rank():
        return sum(1 for piv in eb.rows if piv in inner)

    frontier = []
    for piece in pieces(dict(seed)):
        if eb.add(piece):
            frontier.append(piece)
    depth = 0
    while frontier and depth < max_depth and inner_rank() < len(box):
        depth += 1
        nxt = []
        for vec in frontier:
            for g in gens:
                for piece in pieces(module.act(g, vec)):
                    report.cases += 1
                    if eb.add(piece):
                        nxt.append(piece)
        frontier = nxt
    rank = inner_rank()
    ratio = Fraction(rank, len(box)) if box else Fraction(0)
    report.details = {
        "rank": rank,
        "box_dim": len(box),
        "ratio": str(ratio),
        "depth": depth,
        "gen_bound": gen_bound,
        "window": window,
        "margin": margin,
        "degree_bound": degree_bound,
        "weight_split": split,
    }
    if ratio != 1:
        report.fail({"ratio": str(ratio)})
    return report
