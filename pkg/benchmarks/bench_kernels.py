"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the raw kernels on products drawn from C(3) and one end-to-end
structure-equation sweep under each backend (the sweep runs in a
subprocess so the backend is chosen fresh at import).
"""

import argparse
import os
import subprocess
import sys
import timeit

from bordered_hfk import _kernels_py
from bordered_hfk.algebra import algebra

try:
    from bordered_hfk import _kernels as compiled
except ImportError:
    compiled = None

SWEEP = (
    "import time; from bordered_hfk.bimodules import positive_crossing;"
    "from bordered_hfk.dstructures import verify_da_bimodule;"
    "from bordered_hfk.kernels import BACKEND;"
    "t = time.perf_counter(); r = verify_da_bimodule(positive_crossing(3, 1), 3, 1);"
    "print(BACKEND, r.checked, round(time.perf_counter() - t, 3))"
)


def workload():
    A = algebra(3)
    gens = list(A.basis(1))
    by_source = {}
    for g in gens:
        by_source.setdefault(g[0], []).append(g)
    work = []
    for a in gens[::7]:
        for b in by_source.get(a[1], ())[::3]:
            i, j, k = a[0], a[1], b[1]
            work.append((a[2], b[2], A.corr(i, j, k), A.killers(i, k)))
    return work


def bench(mod, work, repeat):
    f = mod.product_exponents
    return min(timeit.repeat(lambda: [f(*w) for w in work], number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    work = workload()
    print(f"product_exponents on {len(work)} generator pairs of C(3)")
    t_py = bench(_kernels_py, work, args.repeat)
    print(f"  python  {t_py * 1e3:8.2f} ms")
    if compiled is None:
        print("  cython  (extension not built)")
    else:
        t_c = bench(compiled, work, args.repeat)
        print(f"  cython  {t_c * 1e3:8.2f} ms   speedup {t_py / t_c:.2f}x")
    print("sweep: crossing(+, n=3, pos=1), exponent cap 1  [backend, checks, seconds]")
    for pure in ("1", "0"):
        env = dict(os.environ, BORDERED_HFK_PURE=pure)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True)
        print("  " + (out.stdout.strip() or out.stderr.strip()))


if __name__ == "__main__":
    main()
