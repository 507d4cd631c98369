"""Exact dispersion: the largest open axis-parallel box avoiding a point set.

The supremum over half-open boxes equals the maximum over open boxes whose
endpoints lie on the candidate grid ``{0} U coords U {1}``; both solvers
search that grid and report the witness as an open box.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from ._kernels import PRUNE_SLACK, pruned_search
from .geometry import AxisBox, PointSet, Semantics, contains_mask, volume

DEFAULT_MAX_BOXES = 10**9


class CapacityError(RuntimeError):
    """Instance too large for the requested method."""


class Method(enum.Enum):
    BRUTE = "brute"
    PRUNED = "pruned"


@dataclass(frozen=True)
class DispersionResult:
    value: float
    witness: AxisBox
    method: Method


def _as_pointset(T) -> PointSet:
    return T if isinstance(T, PointSet) else PointSet(T)


def candidate_grid(T: PointSet) -> list[np.ndarray]:
    """Per-axis sorted, deduplicated ``{0} U {p_i : p in T} U {1}``."""
    T = _as_pointset(T)
    out = []
    for i in range(T.dim):
        out.append(np.unique(np.concatenate(([0.0], T.points[:, i], [1.0]))))
    return out


def is_empty(box: AxisBox, T: PointSet) -> bool:
    T = _as_pointset(T)
    if box.dim != T.dim:
        raise ValueError(f"box has dimension {box.dim}, point set has {T.dim}")
    if T.n == 0:
        return True
    return not bool(np.any(contains_mask(box, T.points)))


def _key(lo, hi):
    return tuple(lo) + tuple(hi)


def _result(lo, hi, method: Method) -> DispersionResult:
    box = AxisBox(tuple(float(v) for v in lo), tuple(float(v) for v in hi), Semantics.OPEN)
    return DispersionResult(volume(box), box, method)


def brute_force_size(T: PointSet) -> int:
    """Number of grid boxes the brute-force oracle would enumerate."""
    return math.prod(math.comb(len(g), 2) for g in candidate_grid(T))


def dispersion_bruteforce(T, max_boxes: int | None = DEFAULT_MAX_BOXES) -> DispersionResult:
    """Enumerate every grid box; ties go to the lexicographically smallest (lo, hi)."""
    T = _as_pointset(T)
    d = T.dim
    if max_boxes is not None and brute_force_size(T) > max_boxes:
        raise CapacityError(
            f"brute force would enumerate {brute_force_size(T)} boxes (limit {max_boxes})"
        )
    pts = T.points
    pairs, exts, insides = [], [], []
    for i, g in enumerate(candidate_grid(T)):
        p = np.array(list(itertools.combinations(g, 2)))
        pairs.append(p)
        exts.append(p[:, 1] - p[:, 0])
        x = pts[:, i]
        insides.append((x[None, :] > p[:, :1]) & (x[None, :] < p[:, 1:]))

    last_pairs, last_ext, last_inside = pairs[-1], exts[-1], insides[-1]
    best = -1.0
    best_key = None
    for combo in itertools.product(*(range(len(p)) for p in pairs[:-1])):
        partial = 1.0
        mask = np.ones(pts.shape[0], dtype=bool)
        for axis, c in enumerate(combo):
            partial *= exts[axis][c]
            mask &= insides[axis][c]
        empty = ~np.any(last_inside & mask[None, :], axis=1)
        if not empty.any():
            continue
        vols = np.where(empty, partial * last_ext, -1.0)
        vmax = vols.max()
        if vmax < best:
            continue
        lo_head = [pairs[a][c][0] for a, c in enumerate(combo)]
        hi_head = [pairs[a][c][1] for a, c in enumerate(combo)]
        for j in np.flatnonzero(vols == vmax):
            key = _key(lo_head + [last_pairs[j][0]], hi_head + [last_pairs[j][1]])
            if vmax > best or key < best_key:
                best, best_key = float(vmax), key
    return _result(best_key[:d], best_key[d:], Method.BRUTE)


def axis_order(T: PointSet) -> list[int]:
    """Axes by descending count of distinct coordinates, ties by index."""
    counts = [len(np.unique(T.points[:, i])) for i in range(T.dim)]
    return sorted(range(T.dim), key=lambda i: -counts[i])


def _prepare(T: PointSet):
    perm = np.array(axis_order(T), dtype=np.int64)
    P = T.points[:, perm]
    P = P[np.argsort(P[:, -1], kind="stable")]
    return np.ascontiguousarray(P), perm


def _pruned_numpy(P: np.ndarray, perm: np.ndarray):
    """Vectorized counterpart of :func:`dispersion._kernels.pruned_search`."""
    n, d = P.shape
    last = d - 1
    cur_lo = np.zeros(d)
    cur_hi = np.ones(d)
    state = {"best": -1.0, "lo": np.zeros(d), "hi": np.ones(d)}

    def leaf(idx, partial):
        u = np.unique(np.concatenate(([0.0], P[idx, last], [1.0])))
        lo, hi = u[:-1], u[1:]
        axis = perm[last]
        vols = np.ones(len(lo))
        for i in range(d):
            vols = vols * ((hi - lo) if i == axis else (cur_hi[i] - cur_lo[i]))
        j = int(np.argmax(vols))  # first maximum has the smallest lo
        v = float(vols[j])
        cur_lo[axis], cur_hi[axis] = lo[j], hi[j]
        if v > state["best"] or (
            v == state["best"] and _key(cur_lo, cur_hi) < _key(state["lo"], state["hi"])
        ):
            state["best"] = v
            state["lo"] = cur_lo.copy()
            state["hi"] = cur_hi.copy()

    def descend(q, idx, partial):
        if q == last:
            leaf(idx, partial)
            return
        x = P[idx, q]
        vals = np.unique(np.concatenate(([0.0], x, [1.0])))
        top = len(vals) - 1
        axis = perm[q]
        for a in range(top):
            lo = vals[a]
            for b in range(top, a, -1):
                hi = vals[b]
                bound = partial * (hi - lo)
                if bound * PRUNE_SLACK < state["best"]:
                    break
                cur_lo[axis], cur_hi[axis] = lo, hi
                descend(q + 1, idx[(x > lo) & (x < hi)], bound)
            else:
                continue
            if b == top:
                break

    descend(0, np.arange(n), 1.0)
    return state["best"], state["lo"], state["hi"]


def dispersion_exact(T) -> DispersionResult:
    """Depth-first grid search with bound pruning and point filtering.

    Returns exactly the value and witness of :func:`dispersion_bruteforce`.
    """
    T = _as_pointset(T)
    P, perm = _prepare(T)
    if _accel.HAVE_NUMBA:
        value, lo, hi = pruned_search(P, perm)
    else:
        value, lo, hi = _pruned_numpy(P, perm)
    res = _result(lo, hi, Method.PRUNED)
    assert res.value == value
    return res


def gap_1d(coords) -> tuple[float, float]:
    """Widest open gap of ``{0} U coords U {1}``; leftmost on ties."""
    u = np.unique(np.concatenate(([0.0], np.asarray(coords, dtype=np.float64).ravel(), [1.0])))
    j = int(np.argmax(np.diff(u)))
    return float(u[j]), float(u[j + 1])
