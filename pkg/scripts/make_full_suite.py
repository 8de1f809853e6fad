"""Regenerate src/hvgap/suites/full.suite (the acceptance grids as a suite config)."""

import json
from pathlib import Path

ONEDIM = {"module": "onedim", "b": "1/2", "c": "2"}
W1 = {"module": "whittaker", "psiI": "1"}
W2 = {"module": "whittaker", "psiI": "1", "psiL1": "1", "psiL2": "2"}
W3 = {"module": "whittaker", "lambda0": "1", "psiL1": "1"}
W4 = {"module": "whittaker", "psiI": "2+i", "lambda0": "3", "psiL2": "1/2"}
VS = [ONEDIM, W1, W2, W3, W4]


def tT(V, a, d):
    return {"module": "tensorT", "V": V, "a": a, "d": list(d)}


def tG(V, a, d, P):
    return {"module": "tensorG", "V": V, "a": a, "p": len(d), "d": list(d), "P": sorted(P)}


def mirror(alpha, beta, gamma, Q):
    return {"module": "mirrorIS", "alpha": alpha, "beta": beta, "gamma": gamma, "Q": Q}


def twisted(base, f):
    return {"module": "twisted", "base": base, "f": f}


RANGE2 = {"from": -2, "to": 2}
RANGE3 = {"from": -3, "to": 3}

checks = []
add = checks.append

# 1-2: structure
add({"check": "jacobi", "params": {"bound": 6},
     "grid": {"algebra": [{"kind": "thv"}, {"kind": "mirror"}] + [{"kind": "gap", "p": p} for p in (2, 3, 4, 5)]}})
add({"check": "antisymmetry", "params": {"bound": 6},
     "grid": {"algebra": [{"kind": "thv"}, {"kind": "mirror"}, {"kind": "gap", "p": 3}]}})
add({"check": "hom", "params": {"bound": 8}})
add({"check": "hom", "params": {"bound": 8, "central_sign": 1}, "expect": "fail"})
add({"check": "jacobi", "expect": "fail",
     "params": {"bound": 3, "algebra": {"kind": "thv"},
                "override": [{"x": "L:1", "y": "I:1", "terms": {"I:2": "2"}}]}})

# 3: module axioms (cells where the construction is not a module are skipped, see controls below)
add({"check": "module_axioms",
     "params": {"family": "tensorT", "d": "all", "skip_defects": True, "gen_bound": 5, "support_bound": 4, "degree_bound": 3},
     "grid": {"V": VS, "a": ["1/3", "1/3+i"], "p": [2, 3]}})
add({"check": "module_axioms",
     "params": {"family": "tensorG", "d": "all", "P": "all", "skip_defects": True, "gen_bound": 5, "support_bound": 4, "degree_bound": 3},
     "grid": {"V": VS, "a": ["1/3", "1/3+i"], "p": [2, 3]}})
add({"check": "module_axioms", "expect": "fail",
     "params": {"module": tT(ONEDIM, "1/3", (0, 1)), "gen_bound": 5, "support_bound": 4, "degree_bound": 0}})
add({"check": "module_axioms", "expect": "fail",
     "params": {"module": tG(W1, "1/3", (0, 0, 0), (0, 2)), "gen_bound": 5, "support_bound": 4, "degree_bound": 2}})
add({"check": "grading", "params": {"gen_bound": 4, "support_bound": 3, "degree_bound": 2},
     "grid": {"module": [tT(W2, "1/3", (0, 0)), tG(W4, "i", (0, 1, 0), (0, 1, 2)), twisted(tT(W1, "1/3", (0, 0)), {})]}})

# 4: Omega closed form, symbolic
add({"check": "lemma35_symbolic", "params": {"l": RANGE2, "skip_defects": True},
     "grid": {"p": [2, 3], "h": [0, 1, 2, 3]}})
add({"check": "lemma35_symbolic", "expect": "fail", "params": {"p": 2, "h": 0, "l": RANGE2}})

# 5: Omega closed form on modules
add({"check": "lemma35_module", "params": {"l": RANGE2, "m": RANGE2, "k_bound": 3, "degree_bound": 2},
     "grid": {"module": [tT(ONEDIM, "1/3", (0, 0)), tT(W1, "1/3", (0, 0)), tT(W2, "1/3+i", (1, 1)),
                         tG(W1, "1/3", (0, 0), (0, 1)), tG(ONEDIM, "0", (0, 0, 0), (0, 1, 2))]}})

# 6: recursion
add({"check": "omega_recursion", "params": {"s_max": 6, "lm_bound": 3}, "grid": {"p": [2, 3, 4]}})

# 7: Omega vanishing on A(alpha,beta,gamma,Q)
add({"check": "eq51", "params": {"s": {"from": 1, "to": 5}, "l": RANGE3, "m": RANGE3, "window": 8},
     "grid": {"mirror": [mirror("0", "0", "1", [0, 1]), mirror("1/3", "1/2", "2+i", [0, 1]),
                         mirror("1/2", "0", "1", [0]), mirror("2", "1/3", "1", [1])]}})

# 8: separation from Verma (x) A
add({"check": "prop52",
     "params": {"a": "1/3", "d": [0, 0], "P": [0, 1], "l": {"from": 1, "to": 5}, "m": {"from": 1, "to": 3}, "window": 3,
                "degree_bound": 2, "verma": {"module": "verma", "c": "1", "h": "2", "l": "3", "cutoff": 6}},
     "grid": {"V": [W1, W2, W4], "mirror": [mirror("1/3", "1/2", "1", [0, 1]), mirror("0", "0", "2+i", [0, 1])]}})

# 9: specialization
add({"check": "specialization", "params": {"family": "T", "bound": 6},
     "grid": {"a": ["0", "1/3+i"], "b": ["1", "-2/5"], "c": ["0", "3"]}})
add({"check": "specialization", "params": {"family": "G", "d": "all", "P": "all", "a": "1/3", "b": "2", "c": "3+i", "bound": 6},
     "grid": {"p": [2, 3]}})

# 10: isomorphisms and necessary conditions
for src, dst in [
    (tT(W2, "1/3", (0, 0)), tT(W2, "1/3", (0, 0))),
    (tT(W2, "1/3", (0, 0)), tT(W2, "-2/3", (0, 0))),
    (tG(W1, "1/3", (0, 0), (0, 1)), tG(W1, "1/3", (0, 0), (0, 1))),
    (tG(W2, "1/3", (0, 1), (0,)), tG(W2, "-2/3", (0, 1), (1,))),
    (tG(W4, "i", (0, 1, 0), (1,)), tG(W4, "-1+i", (0, 1, 0), (2,))),
]:
    add({"check": "iso_map", "params": {"src": src, "dst": dst, "gen_bound": 4, "window": 3, "degree_bound": 2}})
add({"check": "iso_map", "expect": "fail",
     "params": {"src": tG(W1, "1/3", (0, 0), (0,)), "dst": tG(W1, "-2/3", (0, 0), (0,)), "gen_bound": 4, "window": 3}})
add({"check": "noniso", "params": {"A": tG(W1, "0", (0, 0), (0, 1)), "B": tG(W1, "1/2", (0, 0), (0, 1)), "expect_failed": ["a-b in Z", "Q = sigma^(a-b)(P)"]}})
add({"check": "noniso", "params": {"A": tG(ONEDIM, "1", (0, 0, 0), (0,)), "B": tG(ONEDIM, "0", (0, 0, 0), (0,)), "expect_failed": ["Q = sigma^(a-b)(P)"]}})
add({"check": "noniso", "params": {"A": tG(W2, "1/3", (0, 1), (0, 1)), "B": tG(W2, "1/3", (0, 1), (0, 1)), "expect_failed": []}})
add({"check": "noniso", "params": {"A": tT(W1, "0", (0, 0)), "B": tT(W3, "0", (0, 0)), "expect_failed": ["h = n", "q = t"]}})

# 11: span probes
seeds_T = [{"0": {"0": "1"}}, {"1": {"1": "1"}}, {"-2": {"2": "1"}}, {"0": {"0": "1"}, "2": {"1": "-3"}},
           {"3": {"0": "1", "1": "1/2"}}]
seeds_G2 = [{"0": {"0": "1"}}, {"1": {"1": "1"}}, {"-2": {"2": "1"}}, {"0": {"0": "1"}, "3": {"1": "-3"}},
            {"3": {"0": "1", "2": "1/2"}}]
probe = {"gen_bound": 4, "window": 3, "degree_bound": 2, "margin": 2}
for mod in [tT(W1, "1/3", (0, 0)), tT(W2, "1/3+i", (1, 1)), tT(W3, "1/2", (0, 0, 0))]:
    add({"check": "span_probe", "params": dict(probe, module=mod), "grid": {"seed": seeds_T}})
for mod in [tG(W1, "1/3", (0, 0), (0, 1)), tG(W2, "i", (0, 1), (0, 1)), tG(W4, "1/2", (0, 0, 0), (0, 1, 2))]:
    add({"check": "span_probe", "params": dict(probe, module=mod), "grid": {"seed": seeds_G2}})
seeds_1d = [{"0": {"0": "1"}}, {"1": {"0": "1"}}, {"-2": {"0": "1"}}, {"0": {"0": "1"}, "2": {"0": "-3"}},
            {"3": {"0": "1/2"}, "-1": {"0": "i"}}]
tprobe = dict(probe, margin=4)
for mod, seeds in [(twisted(tT(W1, "1/3", (0, 0)), {"1": "1"}), seeds_T),
                   (twisted(tT(ONEDIM, "1/3", (0, 0)), {"1": "1", "-1": "-1"}), seeds_1d),
                   (twisted(tT(W2, "1/3+i", (0, 0)), {"-2": "1/2", "0": "i", "2": "3"}), seeds_T)]:
    add({"check": "span_probe", "params": dict(tprobe, module=mod), "grid": {"seed": seeds}})
add({"check": "span_probe", "expect": "fail",
     "params": {"module": {"module": "intermediateT", "a": "0", "b": "0", "c": "0"}, "seed": {"0": "1"}, "gen_bound": 4, "window": 4}})
add({"check": "span_probe", "expect": "fail",
     "params": {"module": tG({"module": "onedim", "b": "0", "c": "1"}, "0", (0, 0), (0,)), "seed": {"0": {"0": "1"}}, "gen_bound": 4, "window": 4}})

# 12: twisting
add({"check": "theta", "params": {"index_bound": 5},
     "grid": {"f": [{"1": "1"}, {"1": "2+i", "-2": "1/3", "2": "5"}, {"-1": "1", "1": "-1"}, {"-2": "1", "-1": "1", "1": "1", "2": "1"}]}})
add({"check": "theta", "params": {"index_bound": 5, "algebra": {"kind": "gap", "p": 2}}, "grid": {"f": [{"1": "1"}, {"-1": "2", "1": "1"}]}})
add({"check": "theta", "params": {"index_bound": 5, "algebra": {"kind": "gap", "p": 3}}, "grid": {"f": [{"1": "1", "2": "-1"}]}})
add({"check": "twisted", "params": {"gen_bound": 4, "support_bound": 3, "degree_bound": 2},
     "grid": {"f": [{"0": "1"}, {"1": "1", "-1": "-1"}, {"-2": "1/2", "0": "i", "2": "3"}, {"2": "1", "1": "-1"}],
              "base": [tT(ONEDIM, "1/3", (0, 0)), tT(W2, "1/3+i", (0, 0))]}})
add({"check": "twisted", "params": {"gen_bound": 4, "support_bound": 3, "degree_bound": 2},
     "grid": {"f": [{"1": "1"}, {"-1": "2", "1": "1"}], "base": [tG(W2, "1/3", (0, 0), (0, 1))]}})
add({"check": "twist_inverse", "params": {"f": {"-2": "1/2", "1": "3"}, "gen_bound": 4, "window": 3, "degree_bound": 2},
     "grid": {"base": [tT(W2, "1/3", (0, 0)), tT(ONEDIM, "1/3", (1, 1))]}})
add({"check": "nondiagonal", "params": {"f": {"1": "1"}, "window": 3, "degree_bound": 2}, "grid": {"base": [tT(W1, "1/3", (0, 0))]}})

suite = {"name": "full", "seed": 0, "checks": checks}
out = Path(__file__).resolve().parents[1] / "src" / "hvgap" / "suites" / "full.suite"
out.write_text(json.dumps(suite, indent=1, sort_keys=True) + "\n", encoding="utf-8")
print(f"wrote {out} ({len(checks)} check entries)")
