"""Time the compiled and pure-Python reduction kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each case builds one filtration, then feeds the same arrays to both backends
and checks that their outputs are identical before reporting timings.
"""

from __future__ import annotations

import argparse
import json
import platform
import time

import numpy as np

from phdim import _pykernels
from phdim.filtration import alpha_filtration_2d, cech_filtration, rips_filtration
from phdim.generators import gen_arcs, gen_sierpinski, gen_uniform_cube
from phdim.persistence import _degree0

try:
    from phdim import _ckernels
except ImportError:  # extension not built
    _ckernels = None

CASES = {
    "rips-h1 uniform n=200": lambda: rips_filtration(gen_uniform_cube(200, 2, seed=1), 2),
    "cech-h1 arcs n=100": lambda: cech_filtration(gen_arcs(100), 2),
    "alpha-h1 sierpinski n=20000": lambda: alpha_filtration_2d(gen_sierpinski(20000, 1)),
    "rips-h2 uniform3d n=60": lambda: rips_filtration(gen_uniform_cube(60, 3, seed=2), 3),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    return all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))


def bench_case(f, repeat):
    rows = []
    edges = f.facet_ranks(1)
    n0 = f.count(0)
    for name, mod in (("python", _pykernels), ("compiled", _ckernels)):
        if mod is None:
            continue
        t, out = best_of(lambda: mod.union_find_pairs(n0, edges), repeat)
        rows.append(("union_find", name, t, out))
    _, _, cleared = _degree0(f, True)
    fac = f.facet_ranks(2)
    for name, mod in (("python", _pykernels), ("compiled", _ckernels)):
        if mod is None:
            continue
        t, out = best_of(lambda: mod.cohomology_pairs(f.count(1), fac, cleared), repeat)
        rows.append(("cohomology_h1", name, t, out))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    a = ap.parse_args(argv)
    report = {"python": platform.python_version(), "compiled_available": _ckernels is not None, "cases": []}
    print(f"{'case':30} {'kernel':14} {'simplices':>10} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for case, build in CASES.items():
        f = build()
        rows = bench_case(f, a.repeat)
        for kernel in ("union_find", "cohomology_h1"):
            got = {name: (t, out) for k, name, t, out in rows if k == kernel}
            py_t = got["python"][0]
            c_t = got["compiled"][0] if "compiled" in got else float("nan")
            if "compiled" in got and not same(got["python"][1], got["compiled"][1]):
                raise SystemExit(f"backends disagree on {case} / {kernel}")
            print(f"{case:30} {kernel:14} {len(f):>10} {py_t:>10.4f} {c_t:>11.4f} {py_t / c_t:>7.1f}x")
            report["cases"].append({"case": case, "kernel": kernel, "simplices": len(f),
                                    "python_s": py_t, "compiled_s": c_t})
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(report, fh, indent=2)


if __name__ == "__main__":
    main()
