"""Timing comparison of the compiled and pure-numpy kernel paths.

The path is chosen at import time from DRHARM_DISABLE_NUMBA, so each
configuration runs in a fresh subprocess.  Workloads are sized to the shapes
the zero scans actually produce: grids of thousands of spectral points with
1e3..1e5 series terms each.  Every workload runs once for warm-up (JIT
compilation lands there) and is then timed, so the table compares steady
state.

Run:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

WORKLOADS = {
    "phi lambda-grid (2,1), 4000 pts, r=2": """
import numpy as np
from drharm import SpaceParams, phi_grid
lams = np.linspace(0.01, 20.0, 4000)
phi_grid(SpaceParams(2, 1), lams, 2.0)
""",
    "phi lambda-grid (3,2), 2000 pts, r=4": """
import numpy as np
from drharm import SpaceParams, phi_grid
lams = np.linspace(0.01, 20.0, 2000)
phi_grid(SpaceParams(3, 2), lams, 4.0)
""",
    "sphere zero set (2,1), r=2, window 10": """
from drharm import SpaceParams, DistKind, spectral_zero_set
spectral_zero_set(SpaceParams(2, 1), 2.0, DistKind.SPHERE, 10.0,
                  certify=False)
""",
    "double-double rung, 200 near-cancellation evals": """
from drharm.hypergeom import conjpair_report
import numpy as np
for lam in np.linspace(1.9, 2.1, 200):
    conjpair_report(1.0, lam, 2.0, -np.sinh(1.75) ** 2, tol=1e-14)
""",
}

RUNNER = """
import json, time
code = {code!r}
ns = {{}}
exec(code, ns)          # warm-up: JIT compile + caches
t0 = time.perf_counter()
exec(code, ns)
print(json.dumps({{"wall": time.perf_counter() - t0}}))
"""


def time_workload(code: str, disable_numba: bool) -> float:
    env = dict(os.environ)
    if disable_numba:
        env["DRHARM_DISABLE_NUMBA"] = "1"
    else:
        env.pop("DRHARM_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", RUNNER.format(code=code)],
                         env=env, capture_output=True, text=True, check=True)
    return float(json.loads(out.stdout.strip().splitlines()[-1])["wall"])


def main() -> int:
    rows = []
    for name, code in WORKLOADS.items():
        t_numba = time_workload(code, disable_numba=False)
        t_numpy = time_workload(code, disable_numba=True)
        rows.append((name, t_numba, t_numpy))
    width = max(len(name) for name, *_ in rows)
    print(f"{'workload':<{width}}  {'numba':>9}  {'numpy':>9}  {'ratio':>6}")
    for name, t_numba, t_numpy in rows:
        ratio = t_numpy / t_numba if t_numba > 0 else float("inf")
        print(f"{name:<{width}}  {t_numba:>8.3f}s  {t_numpy:>8.3f}s  "
              f"{ratio:>5.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
