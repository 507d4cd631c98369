"""Compare the numba kernels with the pure-numpy fallback of the pruned solver.

Usage: python3 benchmarks/bench_solver.py [--repeat 3]

Both paths must return the same value and witness; the script exits non-zero
otherwise.
"""

import argparse
import sys
import time

import numpy as np

from dispersion import _accel
from dispersion.geometry import PointSet
from dispersion.nets import hammersley
from dispersion.solver import dispersion_exact


def cases():
    for m in (6, 7, 8):
        yield f"hammersley m={m}", hammersley(m)
    rng = np.random.default_rng(0)
    for n, d in ((40, 3), (20, 4)):
        yield f"random n={n} d={d}", PointSet(rng.random((n, d)))


def best_time(T, repeat):
    best, res = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = dispersion_exact(T)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba path disabled (DISPERSION_NO_NUMBA set or numba missing)")
        return 1

    # warm the JIT cache so compile time is not charged to the first case
    dispersion_exact(hammersley(2))

    print(f"{'case':<22}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  value")
    status = 0
    for name, T in cases():
        _accel.HAVE_NUMBA = True
        t_jit, r_jit = best_time(T, args.repeat)
        _accel.HAVE_NUMBA = False
        t_np, r_np = best_time(T, args.repeat)
        _accel.HAVE_NUMBA = True
        same = r_jit.value == r_np.value and r_jit.witness == r_np.witness
        status |= not same
        flag = "" if same else "  MISMATCH"
        print(f"{name:<22}{t_jit:>10.4f}{t_np:>10.4f}{t_np / t_jit:>8.1f}x  {r_jit.value!r}{flag}")
    return status


if __name__ == "__main__":
    sys.exit(main())
