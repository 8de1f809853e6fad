"""Configuration-driven check suites.

A suite config is JSON::

    {"name": "...", "seed": 0,
     "checks": [{"check": "jacobi", "params": {...}, "grid": {"name": [values]},
                 "expect": "pass" | "fail"}]}

Each entry expands to the cartesian product of its grid (keys in sorted
order) merged over ``params``.  The special values ``"d": "all"`` and
``"P": "all"`` expand to every tuple in {0,1}^p and every nonempty subset of
{0..p-1}.  A grid point whose preconditions fail is reported under
``skipped`` with the reason.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor

from .algebra import (
    Algebra,
    AlgebraError,
    antisymmetry_check,
    bracket_terms,
    hom_check,
    jacobi_check,
    mirror_iso,
    parse_basis,
)
from .enveloping import omega_recursion_check
from .report import ERROR, FAIL, PASS, CheckReport, timed
from .restricted import RestrictedModuleError, restricted_from_json
from .scalars import ScalarParseError, as_scalar
from .twisting import nondiagonal_witness, theta_consistency_check, twist_inverse_check, twisted_axiom_and_probe
from .weightmod import (
    GapParams,
    ModuleError,
    TensorG,
    TensorT,
    cyclic_span_probe,
    eq51_check,
    gate_conflicts,
    grading_check,
    iso_map_check,
    lemma35_module_check,
    lemma35_symbolic_check,
    module_axiom_check,
    module_from_json,
    noniso_witness,
    prop52_separation,
    specialization_G_check,
    specialization_T_check,
    thv_d_conflict,
)


class ConfigError(ValueError):
    pass


class Skip(Exception):
    pass


def _algebra(spec) -> Algebra:
    if isinstance(spec, str):
        spec = {"kind": spec}
    return Algebra.from_json(spec)


def _ints(spec) -> list:
    """[lo, hi] inclusive range or explicit list."""
    if isinstance(spec, dict):
        return list(range(int(spec["from"]), int(spec["to"]) + 1))
    return [int(x) for x in spec]


# ---------------------------------------------------------------- runners


def run_jacobi(p):
    alg = _algebra(p["algebra"])
    override = p.get("override")
    if not override:
        return jacobi_check(alg, int(p["bound"]))
    table = {}
    for row in override:
        x, y = parse_basis(row["x"]), parse_basis(row["y"])
        terms = tuple((parse_basis(b), as_scalar(c)) for b, c in sorted(row["terms"].items()))
        table[(x, y)] = terms
        table[(y, x)] = tuple((b, -c) for b, c in terms)

    def bracket(x, y):
        hit = table.get((x, y))
        return hit if hit is not None else bracket_terms(alg, x, y)

    report = jacobi_check(alg, int(p["bound"]), bracket=bracket)
    report.name += "[override]"
    return report


def run_hom(p):
    sign = int(p.get("central_sign", -1))
    from .algebra import MIRROR, gap

    return hom_check(lambda x: mirror_iso(x, central_sign=sign), gap(2), MIRROR, int(p["bound"]))


def run_antisymmetry(p):
    return antisymmetry_check(_algebra(p["algebra"]), int(p["bound"]))


def run_omega_recursion(p):
    P = int(p["p"])
    report = CheckReport(f"omega_recursion[p={P}]")
    b = int(p["lm_bound"])
    for s in range(1, int(p["s_max"]) + 1):
        for l, m in itertools.product(range(-b, b + 1), repeat=2):
            for i, j in itertools.product(range(1, P), repeat=2):
                report.merge(omega_recursion_check(P, l, m, i, j, s))
                if not report.ok:
                    return report
    return report


def _tensor(p):
    """Build TensorT / TensorG from family-style params, or a full descriptor."""
    if "module" in p:
        return module_from_json(p["module"])
    V = restricted_from_json(p["V"])
    d = tuple(p["d"])
    if p["family"] == "tensorT":
        if p.get("skip_defects") and thv_d_conflict(d, V):
            raise Skip("non-constant d with I_0 acting nonzero: the tensor action is not a module here (ledger)")
        return TensorT(V, p["a"], d)
    gp = GapParams(len(d), d, p["P"])
    if p.get("skip_defects") and gate_conflicts(gp, V):
        raise Skip(f"P-gate conflicts {gate_conflicts(gp, V)}: the gated action is not a module here (ledger)")
    return TensorG(V, p["a"], gp)


def run_module_axioms(p):
    M = _tensor(p)
    return module_axiom_check(M, int(p["gen_bound"]), int(p["support_bound"]), int(p.get("degree_bound", 0)))


def run_grading(p):
    M = _tensor(p)
    return grading_check(M, int(p["gen_bound"]), int(p["support_bound"]), int(p.get("degree_bound", 0)))


def run_lemma35_symbolic(p):
    P, h = int(p["p"]), int(p["h"])
    report = CheckReport(f"lemma35_symbolic[p={P},h={h}]")
    skipped = 0
    for di, dj in itertools.product((0, 1), repeat=2):
        if p.get("skip_defects") and h < max(di, dj):
            skipped += 1
            continue
        for i, j in itertools.product(range(1, P), repeat=2):
            for l in _ints(p["l"]):
                for s in (2 * h, 2 * h + 1, 2 * h + 2):
                    report.merge(lemma35_symbolic_check(P, h, di, dj, i, j, l, s))
                    if not report.ok:
                        return report
    if skipped:
        report.details = {"skipped_d_pairs": skipped, "reason": "h < max(d_i, d_j): Omega^(0) vanishes (ledger)"}
    return report


def run_lemma35_module(p):
    M = _tensor(p)
    h = M.h
    report = CheckReport(f"lemma35_module[{M.kind}]")
    deg = int(p.get("degree_bound", 0))
    keys = [key for key in M.basis_window(int(p["k_bound"]), deg)]
    gp = M.gp
    for i, j in itertools.product(range(1, gp.p), repeat=2):
        ks = [key for key in keys if not M.gated or all(gp.in_scriptP(t) for t in (key[0] + j, key[0] + i + j))]
        if not ks:
            continue
        for l in _ints(p["l"]):
            for m in _ints(p["m"]):
                for s in (2 * h, 2 * h + 1, 2 * h + 2):
                    report.merge(lemma35_module_check(M, l, m, i, j, s, ks))
                    if not report.ok:
                        return report
    return report


def run_eq51(p):
    A = module_from_json(p["mirror"])
    report = CheckReport("eq51")
    for s in _ints(p["s"]):
        for l in _ints(p["l"]):
            for m in _ints(p["m"]):
                report.merge(eq51_check(A, l, m, s, int(p["window"])))
                if not report.ok:
                    return report
    return report


def run_prop52(p):
    V = restricted_from_json(p["V"])
    gp = GapParams(2, tuple(p["d"]), p["P"])
    report = CheckReport("prop52")
    verma, mirror = module_from_json(p["verma"]), module_from_json(p["mirror"])
    for l, m in itertools.product(_ints(p["l"]), _ints(p["m"])):
        if not (l > 0 and m > 0 and l - m - (V.ann_level().h or 0) > 0):
            continue
        report.merge(prop52_separation(V, p["a"], gp, verma, mirror, l, m, int(p["window"]), int(p.get("degree_bound", 2))))
        if not report.ok:
            return report
    return report


def run_specialization(p):
    if p.get("family", "T") == "T":
        return specialization_T_check(p["a"], p["b"], p["c"], int(p.get("bound", 6)))
    d = tuple(p["d"])
    return specialization_G_check(p["a"], p["b"], p["c"], GapParams(len(d), d, p["P"]), int(p.get("bound", 6)))


def _identity(vec):
    return dict(vec)


def run_iso_map(p):
    src, dst = module_from_json(p["src"]), module_from_json(p["dst"])
    if p.get("psi", "identity") != "identity":
        raise ConfigError("only psi = identity is available from a config")
    return iso_map_check(src, dst, _identity, int(p["gen_bound"]), int(p["window"]), int(p.get("degree_bound", 0)))


def run_noniso(p):
    report = noniso_witness(module_from_json(p["A"]), module_from_json(p["B"]))
    if "expect_failed" in p:
        got = sorted((report.counterexample or {}).get("failed", []))
        want = sorted(p["expect_failed"])
        out = CheckReport("noniso_expectation", cases=report.cases, details=report.details)
        if got != want:
            out.fail({"failed": got, "expected": want})
        return out
    return report


def run_span_probe(p):
    M = module_from_json(p["module"])
    seed = M.vector_from_json(p["seed"])
    return cyclic_span_probe(
        M,
        seed,
        int(p["gen_bound"]),
        int(p["window"]),
        int(p.get("degree_bound", 0)),
        int(p.get("max_depth", 50)),
        margin=int(p.get("margin", 0)),
    )


def run_theta(p):
    return theta_consistency_check(p["f"], int(p["index_bound"]), _algebra(p.get("algebra", "thv")))


def run_twisted(p):
    base = module_from_json(p["base"])
    seed = base.vector_from_json(p["seed"]) if "seed" in p else None
    return twisted_axiom_and_probe(
        p["f"],
        base,
        int(p["gen_bound"]),
        int(p["support_bound"]),
        int(p.get("degree_bound", 0)),
        seed=seed,
        probe_window=int(p.get("probe_window", 3)),
        margin=int(p.get("margin", 3)),
    )


def run_twist_inverse(p):
    return twist_inverse_check(p["f"], module_from_json(p["base"]), int(p["gen_bound"]), int(p["window"]), int(p.get("degree_bound", 0)))


def run_nondiagonal(p):
    return nondiagonal_witness(p["f"], module_from_json(p["base"]), int(p["window"]), int(p.get("degree_bound", 0)))


RUNNERS = {
    "jacobi": run_jacobi,
    "hom": run_hom,
    "antisymmetry": run_antisymmetry,
    "omega_recursion": run_omega_recursion,
    "module_axioms": run_module_axioms,
    "grading": run_grading,
    "lemma35_symbolic": run_lemma35_symbolic,
    "lemma35_module": run_lemma35_module,
    "eq51": run_eq51,
    "prop52": run_prop52,
    "specialization": run_specialization,
    "iso_map": run_iso_map,
    "noniso": run_noniso,
    "span_probe": run_span_probe,
    "theta": run_theta,
    "twisted": run_twisted,
    "twist_inverse": run_twist_inverse,
    "nondiagonal": run_nondiagonal,
}


# ---------------------------------------------------------------- expansion


def _expand_special(params: dict) -> list:
    points = [params]
    if params.get("d") == "all":
        points = [dict(q, d=list(d)) for q in points for d in itertools.product((0, 1), repeat=int(q["p"]))]
    if params.get("P") == "all":
        out = []
        for q in points:
            p = int(q["p"]) if "p" in q else len(q["d"])
            for bits in range(1, 2**p):
                out.append(dict(q, P=[i for i in range(p) if bits >> i & 1]))
        points = out
    return points


def expand(config: dict) -> list:
    """Config -> sorted list of tasks (check, params_json, expect)."""
    if not isinstance(config, dict) or not isinstance(config.get("checks", []), list):
        raise ConfigError("config must be an object with a 'checks' list")
    tasks = []
    for n, entry in enumerate(config.get("checks", [])):
        if not isinstance(entry, dict) or "check" not in entry:
            raise ConfigError(f"check entry {n} needs a 'check' field")
        name = entry["check"]
        if name not in RUNNERS:
            raise ConfigError(f"unknown check {name!r}")
        expect = entry.get("expect", PASS)
        if expect not in (PASS, FAIL):
            raise ConfigError(f"expect must be 'pass' or 'fail', got {expect!r}")
        grid = entry.get("grid", {})
        keys = sorted(grid)
        for combo in itertools.product(*(grid[k] for k in keys)):
            params = dict(entry.get("params", {}))
            params.update(zip(keys, combo))
            for point in _expand_special(params):
                tasks.append((name, json.dumps(point, sort_keys=True), expect))
    return sorted(set(tasks))


def run_task(task) -> dict:
    name, params_json, expect = task
    params = json.loads(params_json)
    row = {"check": name, "params": params, "expect": expect}
    report = CheckReport(name)
    try:
        with timed(report):
            inner = RUNNERS[name](params)
        inner.wall_time_ms = report.wall_time_ms
        report = inner
    except Skip as exc:
        row["skipped"] = str(exc)
        return row
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"{name}: missing parameter {exc}") from None
    except ScalarParseError as exc:
        raise ConfigError(f"{name}: {exc}") from None
    except (ModuleError, RestrictedModuleError, AlgebraError, ValueError) as exc:
        row["skipped"] = f"precondition: {exc}"
        return row
    row["report"] = report
    return row


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("HVGAP_THREADS", "1")))
    except ValueError:
        raise ConfigError("HVGAP_THREADS must be an integer") from None


def run_suite(config: dict, timings: bool = False) -> dict:
    tasks = expand(config)
    seed = int(config.get("seed", 0))
    random.seed(seed)
    workers = _workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_task, tasks, chunksize=1))
    else:
        rows = [run_task(t) for t in tasks]
    results, skipped = [], []
    cases = 0
    failed = 0
    for row in rows:
        if "skipped" in row:
            skipped.append({"check": row["check"], "params": row["params"], "reason": row["skipped"]})
            continue
        report = row["report"]
        cases += report.cases
        met = report.status == row["expect"]
        if not met:
            failed += 1
        entry = {
            "check": row["check"],
            "params": row["params"],
            "expect": row["expect"],
            "outcome": PASS if met else FAIL,
            "report": report.to_json(timings=timings),
        }
        results.append(entry)
    status = PASS if failed == 0 else FAIL
    return {
        "suite": config.get("name", ""),
        "seed": seed,
        "status": status,
        "summary": {
            "checks": len(results),
            "failed": failed,
            "skipped": len(skipped),
            "cases": cases,
        },
        "results": results,
        "skipped": skipped,
    }


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None


__all__ = ["ConfigError", "RUNNERS", "expand", "load_config", "run_suite", "run_task", "ERROR"]
