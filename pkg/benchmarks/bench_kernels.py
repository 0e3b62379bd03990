"""Time the hot kernels under numba and under the plain-Python fallback.

Each backend runs in its own interpreter because the switch
(EIKIT_DISABLE_NUMBA) is read at import time.

    python benchmarks/bench_kernels.py [--points 2000] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import numpy as np
import eikit
from eikit import _kernels, derived, quadrature, series_core

points, repeat = int(sys.argv[1]), int(sys.argv[2])
xs = np.linspace(0.05, 6.0, points)
xs = np.concatenate([-xs[::-1], xs])

# first call pays JIT compile or cache load
t0 = time.perf_counter()
quadrature.ei_quadrature(1.0)
series_core.ei_series(1.0)
warmup = time.perf_counter() - t0

def best(fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out

timings = {}
timings["ei_quadrature_grid"], q = best(lambda: [quadrature.ei_quadrature(x).value for x in xs])
timings["ei_series_grid"], s = best(lambda: [series_core.ei_series(x).value for x in xs])
timings["goodwin_staton_lhs_grid"], _ = best(
    lambda: [derived.goodwin_staton_lhs(x).value for x in xs[xs > 0]])
timings["adaptive_gk_near_pole"], _ = best(
    lambda: [_kernels.adaptive_gk(_kernels.EXP_OVER_T, 0.0, -40.0, -1e-4, 1e-12, 20000)
             for _ in range(200)])
print(json.dumps({"backend": eikit.backend(), "warmup": warmup, "timings": timings,
                  "max_route_gap": float(np.max(np.abs(np.array(q) - np.array(s))))}))
"""


def run(disable: bool, points: int, repeat: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["EIKIT_DISABLE_NUMBA"] = "1"
    else:
        env.pop("EIKIT_DISABLE_NUMBA", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(points), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    results = [run(False, args.points, args.repeat), run(True, args.points, args.repeat)]
    fast, slow = results
    print(f"{'workload':<26}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    print(f"{'first call (jit/import)':<26}{fast['warmup']:>11.3f}s{slow['warmup']:>11.3f}s")
    for key in fast["timings"]:
        a, b = fast["timings"][key], slow["timings"][key]
        print(f"{key:<26}{a:>11.3f}s{b:>11.3f}s{b / a:>9.1f}x")
    for r in results:
        print(f"[{r['backend']}] max |series - quadrature| over grid: {r['max_route_gap']:.2e}")


if __name__ == "__main__":
    main()
