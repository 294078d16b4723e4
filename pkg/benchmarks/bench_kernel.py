"""Compare the compiled factor kernels with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat N]

Runs the raw kernels on random tables, then whole-diagram evaluation with
each backend patched in, and checks that both give identical results.
"""

import argparse
import random
import sys
import time

from zxand import _kernel_py, kernel
from zxand import diagram as dg
from zxand.matsem import NatMatrix
from zxand.matsem import eval as mat_eval
from zxand.sampling import random_diagram
from zxand.synth import matrix_to_diagram

try:
    from zxand import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def random_table(rng, width, density):
    return {m: rng.randint(1, 5) for m in range(1 << width) if rng.random() < density}


def kernel_workload(mod, tables, repeat):
    t0 = time.perf_counter()
    total = 0
    for _ in range(repeat):
        for ta, tb, width in tables:
            a = mod.scatter(ta, list(range(width)))
            b = mod.scatter(tb, list(range(width // 2, width // 2 + width)))
            shared = ((1 << width) - 1) & ~((1 << (width // 2)) - 1)
            j = mod.join(a, b, shared)
            for bit in range(width // 2):
                j = mod.marginalize(j, 0)
            total += sum(j.values())
    return time.perf_counter() - t0, total


def diagrams():
    rng = random.Random(7)
    out = [random_diagram(rng, 3, 3, max_wires=4, max_vertices=40) for _ in range(40)]
    out.append(dg.hbox(6))
    m = NatMatrix.from_rows([[rng.randint(0, 3) for _ in range(8)] for _ in range(8)])
    out.append(matrix_to_diagram(m))
    return out


def eval_workload(mod, ds, repeat):
    saved = kernel.scatter, kernel.join, kernel.marginalize
    kernel.scatter, kernel.join, kernel.marginalize = mod.scatter, mod.join, mod.marginalize
    try:
        t0 = time.perf_counter()
        for _ in range(repeat):
            results = [mat_eval(d) for d in ds]
        return time.perf_counter() - t0, results
    finally:
        kernel.scatter, kernel.join, kernel.marginalize = saved


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = random.Random(1)
    tables = [(random_table(rng, w, 0.6), random_table(rng, w, 0.6), w)
              for w in (8, 10, 12) for _ in range(4)]
    ds = diagrams()
    backends = [("python", _kernel_py)]
    if _kernel_c is not None:
        backends.append(("cython", _kernel_c))
    else:
        print("compiled kernel not built; only the fallback is timed")
    print(f"default backend at import: {kernel.BACKEND}")
    rows = []
    for name, mod in backends:
        tk, total = kernel_workload(mod, tables, args.repeat)
        te, results = eval_workload(mod, ds, args.repeat)
        rows.append((name, tk, te, total, results))
        print(f"{name:>7}: kernels {tk:7.3f}s   eval {te:7.3f}s")
    if len(rows) == 2:
        (_, pk, pe, pt, pr), (_, ck, ce, ct, cr) = rows
        if pt != ct or pr != cr:
            print("MISMATCH between backends")
            return 1
        print(f"speedup: kernels x{pk / ck:.2f}, eval x{pe / ce:.2f}; results identical")
    return 0


if __name__ == "__main__":
    sys.exit(main())
