"""Constructive lower bound: an empty box of guaranteed volume for any point set.

The cube is cut along axis 0 into ``k + 1`` equal slabs, ``k = n // (ell + 1)``
with ``ell = floor(log2 d)``. Some slab holds at most ``ell`` points. Inside it,
each point is reduced to its vector of half-indicators (one bit per axis). With
``d >= 2^ell - 1`` columns, either a column is constant (an empty half-slab) or
two columns coincide (an empty quarter-slab).

Slab membership and the half-indicators of the slab axis are decided with exact
rational arithmetic. Box endpoints on that axis are rounded outward to the
nearest doubles, so the box stays empty under float comparisons and its float
volume never drops below the rounded guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .geometry import AxisBox, PointSet, Semantics, volume
from .solver import gap_1d, is_empty


class WitnessError(RuntimeError):
    """A proof step failed; indicates a bug, never a property of the input."""


@dataclass(frozen=True)
class Branch:
    """Which case of the half-indicator argument produced the box.

    ``kind`` is one of ``all_zero``, ``all_one``, ``matched_pair``, plus
    ``empty_slab`` (selected slab has no points) and ``gap_1d`` (d = 1).
    """

    kind: str
    i: Optional[int] = None
    j: Optional[int] = None

    def __str__(self):
        if self.kind == "matched_pair":
            return f"MatchedPair({self.i}, {self.j})"
        if self.kind in ("all_zero", "all_one"):
            name = "AllZeroColumn" if self.kind == "all_zero" else "AllOneColumn"
            return f"{name}({self.i})"
        return {"empty_slab": "EmptySlab", "gap_1d": "Gap1D"}[self.kind]


@dataclass(frozen=True)
class WitnessCertificate:
    box: AxisBox
    guaranteed_volume: float
    ell: int
    slab_index: Optional[int]
    slab_count: int
    branch: Branch
    tau: np.ndarray = field(repr=False)
    slab_points: np.ndarray = field(default=None, repr=False)

    @property
    def volume(self) -> float:
        return volume(self.box)

    def describe(self) -> str:
        lines = [
            f"ell = {self.ell}, slabs = {self.slab_count}, chosen slab = {self.slab_index}",
            f"points in slab = {len(self.tau)}, branch = {self.branch}",
        ]
        for row in self.tau:
            lines.append("  tau = " + "".join(str(int(b)) for b in row))
        lines.append(f"box lo = {self.box.lo}")
        lines.append(f"box hi = {self.box.hi}")
        lines.append(f"volume {self.volume!r} >= guaranteed {self.guaranteed_volume!r}")
        return "\n".join(lines)


def chi(x: float) -> int:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"chi is defined on [0, 1], got {x}")
    return 0 if x <= 0.5 else 1


def tau_matrix(T) -> np.ndarray:
    """``ell x d`` bit matrix; entry (m, i) is ``chi`` of coordinate i of point m."""
    pts = T.points if isinstance(T, PointSet) else np.asarray(T, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("tau_matrix needs at least one point")
    if np.any((pts < 0.0) | (pts > 1.0)):
        raise ValueError("coordinates must lie in [0, 1]")
    return (pts > 0.5).astype(np.uint8)


def _choose_columns(tau: np.ndarray) -> Branch:
    ell, d = tau.shape
    for i in range(d):
        col = tau[:, i]
        if not col.any():
            return Branch("all_zero", i)
        if col.all():
            return Branch("all_one", i)
    seen = {}
    for j in range(d):
        key = tau[:, j].tobytes()
        if key in seen:
            return Branch("matched_pair", seen[key], j)
        seen[key] = j
    raise WitnessError(f"no constant or repeated column among {d} columns for {ell} points")


def _unit_box_for(branch: Branch, d: int) -> tuple[list, list]:
    lo = [0.0] * d
    hi = [1.0] * d
    if branch.kind == "all_zero":
        lo[branch.i] = 0.5
    elif branch.kind == "all_one":
        hi[branch.i] = 0.5
    else:
        hi[branch.i] = 0.5
        lo[branch.j] = 0.5
    return lo, hi


def crucial_box(T) -> WitnessCertificate:
    """Open box of volume 1/2 or 1/4 avoiding ``ell`` points in ``d >= 2^ell - 1`` dims.

    Half-cube branches are tried first (columns in ascending order), then the
    first pair ``i < j`` of identical columns.
    """
    T = T if isinstance(T, PointSet) else PointSet(T)
    ell, d = T.n, T.dim
    if ell < 1:
        raise ValueError("crucial_box needs at least one point")
    if d < 2**ell - 1:
        raise ValueError(f"need d >= 2^ell - 1 = {2**ell - 1}, got d = {d}")
    tau = tau_matrix(T)
    branch = _choose_columns(tau)
    lo, hi = _unit_box_for(branch, d)
    box = AxisBox(tuple(lo), tuple(hi), Semantics.OPEN)
    if not is_empty(box, T):
        raise WitnessError("crucial box is not empty")
    guaranteed = 0.25 if branch.kind == "matched_pair" else 0.5
    return WitnessCertificate(box, guaranteed, ell, None, 1, branch, tau, T.points)


def _slab_of(x: float, slabs: int) -> int:
    q = Fraction(x)
    return min((q.numerator * slabs) // q.denominator, slabs - 1)


def slab_select(T, slab_count: int, capacity: int) -> int:
    """Smallest index of an axis-0 slab holding at most ``capacity`` points."""
    T = T if isinstance(T, PointSet) else PointSet(T)
    if slab_count < 1:
        raise ValueError("slab_count must be positive")
    counts = [0] * slab_count
    for x in T.points[:, 0]:
        counts[_slab_of(float(x), slab_count)] += 1
    for s, c in enumerate(counts):
        if c <= capacity:
            return s
    raise WitnessError(f"every one of {slab_count} slabs holds more than {capacity} points")


def _round_down(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, -math.inf) if Fraction(f) > q else f


def _round_up(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, math.inf) if Fraction(f) < q else f


def ell_for(d: int) -> int:
    """``floor(log2 d)`` without floating point."""
    return int(d).bit_length() - 1


def main_guarantee(n: int, d: int) -> float:
    """``(ell + 1) / (4 (n + ell + 1))`` with ``ell = floor(log2 d)``."""
    ell = ell_for(d)
    return (ell + 1) / (4 * (n + ell + 1))


def guaranteed_box(T) -> WitnessCertificate:
    """Empty open box with volume at least ``(ell+1) / (4 (n+ell+1))``."""
    T = T if isinstance(T, PointSet) else PointSet(T)
    n, d = T.n, T.dim
    if n == 0:
        box = AxisBox.unit(d, Semantics.OPEN)
        return WitnessCertificate(
            box, 1.0, ell_for(d), 0, 1, Branch("empty_slab"),
            np.zeros((0, d), np.uint8), T.points,
        )
    if d == 1:
        lo, hi = gap_1d(T.points[:, 0])
        box = AxisBox((lo,), (hi,), Semantics.OPEN)
        return WitnessCertificate(
            box, 1.0 / (n + 1), 0, None, 1, Branch("gap_1d"),
            np.zeros((0, 1), np.uint8), T.points,
        )

    ell = ell_for(d)
    k = n // (ell + 1)
    slabs = k + 1
    s = slab_select(T, slabs, ell)
    in_slab = np.array([_slab_of(float(x), slabs) == s for x in T.points[:, 0]], dtype=bool)
    pts = T.points[in_slab]
    # rescaled copy for the certificate only; decisions below use exact arithmetic
    rescaled = pts.copy()
    rescaled[:, 0] = np.clip(pts[:, 0] * slabs - s, 0.0, 1.0)

    if len(pts) == 0:
        branch = Branch("empty_slab")
        tau = np.zeros((0, d), np.uint8)
        unit_lo, unit_hi = [0.0] * d, [1.0] * d
    else:
        tau = (pts > 0.5).astype(np.uint8)
        half = Fraction(2 * s + 1, 2 * slabs)
        tau[:, 0] = [1 if Fraction(float(x)) > half else 0 for x in pts[:, 0]]
        branch = _choose_columns(tau)
        unit_lo, unit_hi = _unit_box_for(branch, d)

    lo = list(unit_lo)
    hi = list(unit_hi)
    lo[0] = _round_down(Fraction(s) / slabs + Fraction(unit_lo[0]) / slabs)
    hi[0] = _round_up(Fraction(s) / slabs + Fraction(unit_hi[0]) / slabs)
    box = AxisBox(tuple(lo), tuple(hi), Semantics.OPEN)
    if not is_empty(box, T):
        raise WitnessError("certificate box is not empty in original coordinates")

    guaranteed = float(Fraction(1, 4 * slabs))
    cert = WitnessCertificate(box, guaranteed, ell, s, slabs, branch, tau, rescaled)
    if volume(box) < guaranteed:
        raise WitnessError(f"box volume {volume(box)!r} below guarantee {guaranteed!r}")
    return cert
