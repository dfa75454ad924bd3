"""Time the hot kernels under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each backend runs in its own interpreter because the backend is fixed at
import time by ARTIFACT_DISABLE_NUMBA.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from artifact import kernels as K
from artifact.cover import CocycleParams, random_triples_batch
from artifact.ktypes import KtypeContext, ktype_report
from artifact.padic import PrimeContext

repeat = int(sys.argv[1])
cls = K.cubic_class_table(7, 3)
rng = np.random.default_rng(0)
n = 200_000
va, vb = rng.integers(-5, 5, n), rng.integers(-5, 5, n)
ua, ub = rng.integers(1, 7**6, n) * 7 + 1, rng.integers(1, 7**6, n) * 7 + 3
T = random_triples_batch(CocycleParams(PrimeContext(7), 1), 20_000, 0)
perms = np.array([K.act_on_points(g, 7, 3) for g in [(1, 1, 0, 1), (1, 0, 7, 1), (3, 0, 0, 1)]])

jobs = {
    "hilbert_batch 2e5": lambda: K.hilbert_batch(va, ua, vb, ub, 7, cls),
    "cocycle_defects 2e4": lambda: K.cocycle_defects(T, 1, 7, 6, cls),
    "gauss_sum q=19 x100": lambda: [K.gauss_sum(19, 1, K.cubic_class_table(19, 2)) for _ in range(100)],
    "act_on_points m=3 x50": lambda: [K.act_on_points((2, 3, 7, 5), 7, 3) for _ in range(50)],
    "orbit_labels m=3": lambda: K.orbit_labels(perms),
    "ktype_report q=7 L=3": lambda: ktype_report(7, 3),
}
out = {"backend": K.backend()}
for name, fn in jobs.items():
    fn()  # warm-up (includes JIT compilation)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, ARTIFACT_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'kernel':<26}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name in fast:
        if name == "backend":
            continue
        a, b = fast[name], slow[name]
        print(f"{name:<26}{a * 1e3:>10.2f}ms{b * 1e3:>10.2f}ms{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
