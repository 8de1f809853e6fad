"""Compare the compiled scalar kernel with the pure-Python fallback.

Two measurements:

* kernel: a fixed arithmetic loop run against both kernel modules in-process;
* workload: representative checks run in fresh interpreters, once as imported
  normally and once with ``HVGAP_PURE_PYTHON=1``.

Usage: ``python3 benchmarks/bench_backends.py [--repeat N] [--json]``
"""

from __future__ import annotations

import argparse
import importlib
import json
import os
import subprocess
import sys
import time
import timeit
from fractions import Fraction

WORKLOADS = {
    "jacobi gap(3), bound 7": "from hvgap.algebra import gap, jacobi_check; jacobi_check(gap(3), 7)",
    "omega recursion p=3, s<=6": (
        "import itertools\n"
        "from hvgap.enveloping import omega_recursion_check\n"
        "for s in range(1, 7):\n"
        "    for l, m in itertools.product(range(-3, 4), repeat=2):\n"
        "        omega_recursion_check(3, l, m, 1, 2, s)"
    ),
    "module axioms M(W,a,d,P)": (
        "from hvgap.restricted import Whittaker\n"
        "from hvgap.weightmod import GapParams, TensorG, module_axiom_check\n"
        "M = TensorG(Whittaker(psiI=1, psiL1=1, psiL2=2), '1/3+i', GapParams(2, (0, 1)))\n"
        "module_axiom_check(M, 5, 4, 3)"
    ),
}


def kernel_loop(mod, n: int = 20000) -> None:
    G = mod.GaussianRational
    xs = [G(Fraction(k, 3), Fraction(1 - k, 5)) for k in range(1, 33)]
    acc = G(0)
    for k in range(n):
        x, y = xs[k & 31], xs[(k * 7) & 31]
        acc = acc + x * y - y / x
        if k & 255 == 0:
            acc = G(0)


def bench_kernels(repeat: int) -> dict:
    out = {}
    for name in ("hvgap._scalar_cy", "hvgap._scalar_py"):
        try:
            mod = importlib.import_module(name)
        except ImportError:
            out[name] = None
            continue
        out[name] = min(timeit.repeat(lambda: kernel_loop(mod), number=1, repeat=repeat))
    return out


def _time_subprocess(code: str, pure: bool, repeat: int) -> tuple[float, str]:
    env = dict(os.environ)
    env.pop("HVGAP_PURE_PYTHON", None)
    if pure:
        env["HVGAP_PURE_PYTHON"] = "1"
    prog = (
        "import time\n"
        "t0 = time.perf_counter()\n"
        f"exec({code!r})\n"
        "import hvgap.scalars as s\n"
        "print(time.perf_counter() - t0, s.BACKEND)"
    )
    best, backend = float("inf"), "?"
    for _ in range(repeat):
        res = subprocess.run([sys.executable, "-c", prog], env=env, capture_output=True, text=True, check=True)
        secs, backend = res.stdout.split()
        best = min(best, float(secs))
    return best, backend


def bench_workloads(repeat: int) -> dict:
    out = {}
    for label, code in WORKLOADS.items():
        fast, b1 = _time_subprocess(code, False, repeat)
        slow, b2 = _time_subprocess(code, True, repeat)
        out[label] = {b1: fast, b2: slow}
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw timings as JSON")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    kernels = bench_kernels(args.repeat)
    workloads = bench_workloads(args.repeat)
    if args.json:
        print(json.dumps({"kernel": kernels, "workload": workloads}, indent=1))
        return 0

    cy, py = kernels["hvgap._scalar_cy"], kernels["hvgap._scalar_py"]
    print("kernel arithmetic loop (best of %d)" % args.repeat)
    print(f"  pure python  {py:8.4f} s")
    if cy is None:
        print("  cython       not built")
    else:
        print(f"  cython       {cy:8.4f} s   speedup {py / cy:5.2f}x")
    print("workloads, fresh interpreter (best of %d)" % args.repeat)
    for label, t in workloads.items():
        fast = t.get("cython")
        slow = t["python"]
        ratio = f"{slow / fast:5.2f}x" if fast else "  n/a"
        print(f"  {label:28s} python {slow:7.3f} s  cython {fast if fast else float('nan'):7.3f} s  {ratio}")
    print(f"total {time.perf_counter() - t0:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
