"""Compare the numba and numpy GF(2) column-reduction kernels.

    python3 benchmarks/bench_kernels.py [--sizes 200 800 2000] [--density 0.01]

Both kernels run on the same random sparse matrices; the script checks that the
pivot rows agree and prints timings. A second section times a full homology
computation in subprocesses with and without KHINV_DISABLE_NUMBA=1.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from khinv import _kernels  # noqa: E402


def random_matrix(n: int, density: float, rng: np.random.Generator):
    nnz = max(1, int(n * n * density))
    cols = rng.integers(0, n, nnz)
    rows = rng.integers(0, n, nnz)
    return _kernels.pack_columns(n, n, cols, rows)


def time_it(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


END_TO_END = """
import time
from khinv.builders import pretzel3
from khinv.coeffs import F2H
from khinv.complex import build_involutive
from khinv.homology import homology_graded
C = build_involutive(pretzel3(-3, 3), F2H, "tau", "reduced")
t0 = time.perf_counter()
homology_graded(C)
print(f"{time.perf_counter() - t0:.3f}")
"""


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 800, 2000])
    ap.add_argument("--density", type=float, default=0.01)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    if not _kernels.USE_NUMBA:
        print("numba unavailable or disabled; only the numpy kernel will run")
    else:
        _kernels._reduce_nb(random_matrix(8, 0.3, rng), True)  # compile outside the timings
    print(f"{'n':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}  agree")
    for n in args.sizes:
        M = random_matrix(n, args.density, rng)
        t_np, (low_np, _) = time_it(_kernels.reduce_columns_np, M.copy(), True)
        if _kernels.USE_NUMBA:
            t_nb, (low_nb, _) = time_it(_kernels._reduce_nb, M.copy(), True)
            agree = bool(np.array_equal(low_np, low_nb))
            print(f"{n:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / max(t_nb, 1e-9):>8.1f}  {agree}")
        else:
            print(f"{n:>6} {t_np:>10.4f} {'-':>10} {'-':>8}  -")
    print("\nend to end (reduced involutive BN of the 9-crossing pretzel, homology step only):")
    env = dict(os.environ, PYTHONPATH=str(ROOT / "src"))
    for flag in ("0", "1"):
        env["KHINV_DISABLE_NUMBA"] = flag
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True)
        label = "numpy" if flag == "1" else "numba"
        print(f"  {label}: {out.stdout.strip() or out.stderr.strip()[-200:]} s")


if __name__ == "__main__":
    main()
