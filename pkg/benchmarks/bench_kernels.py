"""Time the hot kernels under the numba and numpy backends.

Each backend runs in its own interpreter because the backend is fixed at
import time.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--skip-slow]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from polysemi import _accel, kernels
from polysemi.construct import assemble, ConstructionSpec, make_cyclic, make_quasitrivial
from polysemi.reduction import extend_binary

repeat, skip_slow = int(sys.argv[1]), sys.argv[2] == "1"
spec = ConstructionSpec(6, 5, (0, 1, 2, 3), tuple(make_cyclic(4).table), tuple(make_quasitrivial("max-chain", 2).table))
F65 = assemble(spec)[1]
F37 = extend_binary(make_cyclic(3), 7)
free9 = np.full(9, -1, dtype=np.int64)
free16 = np.full(16, -1, dtype=np.int64)
inst4 = kernels.instance_tables(4, 2)
inst3 = kernels.instance_tables(3, 2)

jobs = {
    "assoc fast m=6 n=5": lambda: kernels.first_failing_position(F65.table, 6, 5),
    "assoc brute m=3 n=5": lambda: kernels.brute_first_failure(extend_binary(make_cyclic(3), 5).table, 3, 5),
    "assoc brute m=3 n=7": lambda: kernels.brute_first_failure(F37.table, 3, 7),
    "quasitrivial scan m=6 n=5": lambda: kernels.qt_first_failure(F65.table, np.arange(6 ** 5), 6, 5),
    "naive filter m=3 (3^9 tables)": lambda: kernels.naive_filter(3, 2, free9),
    "backtrack m=3": lambda: kernels.backtrack_rowmajor(3, free9, *inst3),
    "backtrack m=4": lambda: kernels.backtrack_rowmajor(4, free16, *inst4),
}
if skip_slow:
    jobs.pop("backtrack m=4")
out = {}
for name, job in jobs.items():
    job()  # warm-up, includes compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        job()
        best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps({"backend": _accel.BACKEND, "times": out}))
"""


def run(backend, repeat, skip_slow):
    env = dict(os.environ, POLYSEMI_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat), "1" if skip_slow else "0"],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)["times"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-slow", action="store_true", help="skip the m=4 backtracker")
    args = ap.parse_args()
    nb = run("numba", args.repeat, args.skip_slow)
    np_ = run("numpy", args.repeat, args.skip_slow)
    width = max(len(k) for k in nb)
    print(f"{'kernel':<{width}}  {'numba [s]':>10}  {'numpy [s]':>10}  {'ratio':>7}")
    for name in nb:
        a, b = nb[name], np_[name]
        print(f"{name:<{width}}  {a:>10.4f}  {b:>10.4f}  {b / a if a else float('inf'):>7.1f}")


if __name__ == "__main__":
    main()
