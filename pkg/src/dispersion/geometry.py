"""Points, axis-parallel boxes and dyadic boxes in the unit cube.

All comparisons are exact; box endpoints are either point coordinates or
0/1, so floating-point equality carries meaning here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# deepest dyadic level tried per axis
MAX_DYADIC_LEVEL = 60


class Semantics(enum.Enum):
    HALF_OPEN = "half_open"  # [lo, hi)
    OPEN = "open"  # (lo, hi)


class PointSet:
    """``n`` points in ``[0, 1]^dim`` stored as an ``(n, dim)`` float64 array."""

    __slots__ = ("dim", "points")

    def __init__(self, points, dim: int | None = None):
        arr = np.asarray(points, dtype=np.float64)
        if arr.size == 0:
            if dim is None:
                if arr.ndim == 2:
                    dim = arr.shape[1]
                else:
                    raise ValueError("dim is required for an empty point set")
            arr = arr.reshape(0, dim)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if dim in (None, 1) else arr.reshape(-1, dim)
        if arr.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {arr.shape}")
        if dim is not None and arr.shape[1] != dim:
            raise ValueError(f"points have dimension {arr.shape[1]}, expected {dim}")
        if arr.shape[1] < 1:
            raise ValueError("dimension must be at least 1")
        if not np.all((arr >= 0.0) & (arr <= 1.0)):
            raise ValueError("all coordinates must lie in [0, 1]")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        self.points = arr
        self.dim = int(arr.shape[1])

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.points, other.points)

    def __repr__(self):
        return f"PointSet(n={self.n}, dim={self.dim})"

    def permute_axes(self, perm: Sequence[int]) -> "PointSet":
        return PointSet(self.points[:, list(perm)], dim=self.dim)

    def with_point(self, p) -> "PointSet":
        p = np.asarray(p, dtype=np.float64).reshape(1, self.dim)
        return PointSet(np.vstack([self.points, p]), dim=self.dim)


@dataclass(frozen=True)
class AxisBox:
    lo: tuple
    hi: tuple
    semantics: Semantics = Semantics.HALF_OPEN

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("lo and hi must be non-empty and of equal length")
        for a, b in zip(lo, hi):
            if not (0.0 <= a <= b <= 1.0):
                raise ValueError(f"need 0 <= lo <= hi <= 1, got ({a}, {b})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @classmethod
    def unit(cls, dim: int, semantics: Semantics = Semantics.HALF_OPEN) -> "AxisBox":
        return cls((0.0,) * dim, (1.0,) * dim, semantics)

    def as_open(self) -> "AxisBox":
        return AxisBox(self.lo, self.hi, Semantics.OPEN)

    def permute_axes(self, perm: Sequence[int]) -> "AxisBox":
        return AxisBox(
            tuple(self.lo[i] for i in perm), tuple(self.hi[i] for i in perm), self.semantics
        )


def volume(box: AxisBox) -> float:
    """Product of side lengths, multiplied in axis order."""
    v = 1.0
    for a, b in zip(box.lo, box.hi):
        v *= b - a
    return v


def contains(box: AxisBox, p) -> bool:
    p = tuple(p)
    if len(p) != box.dim:
        raise ValueError(f"point has dimension {len(p)}, box has {box.dim}")
    if box.semantics is Semantics.HALF_OPEN:
        return all(a <= x < b for a, x, b in zip(box.lo, p, box.hi))
    return all(a < x < b for a, x, b in zip(box.lo, p, box.hi))


def contains_mask(box: AxisBox, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`contains` over the rows of ``points``."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != box.dim:
        raise ValueError("point array does not match box dimension")
    lo = np.asarray(box.lo)
    hi = np.asarray(box.hi)
    if box.semantics is Semantics.HALF_OPEN:
        inside = (points >= lo) & (points < hi)
    else:
        inside = (points > lo) & (points < hi)
    return np.all(inside, axis=1)


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """``[a 2^-k, (a+1) 2^-k)``."""

    a: int
    k: int

    def __post_init__(self):
        if self.k < 0 or not (0 <= self.a < (1 << self.k)):
            raise ValueError(f"invalid dyadic interval a={self.a}, k={self.k}")

    @property
    def lo(self) -> float:
        return math.ldexp(self.a, -self.k)

    @property
    def hi(self) -> float:
        return math.ldexp(self.a + 1, -self.k)

    @property
    def length(self) -> float:
        return math.ldexp(1.0, -self.k)


@dataclass(frozen=True)
class DyadicBox:
    intervals: tuple

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def volume(self) -> float:
        return math.ldexp(1.0, -sum(iv.k for iv in self.intervals))

    def to_box(self) -> AxisBox:
        return AxisBox(
            tuple(iv.lo for iv in self.intervals),
            tuple(iv.hi for iv in self.intervals),
            Semantics.HALF_OPEN,
        )


def largest_dyadic_subinterval(x: float, y: float) -> DyadicInterval:
    """Longest dyadic interval inside ``[x, y)``; smallest ``a`` on ties.

    Its length is always at least ``(y - x) / 4``.
    """
    x = float(x)
    y = float(y)
    if not (0.0 <= x < y <= 1.0):
        raise ValueError(f"need 0 <= x < y <= 1, got x={x}, y={y}")
    for k in range(MAX_DYADIC_LEVEL + 1):
        # scaling by 2^k is exact, and int/float comparisons are exact
        a = math.ceil(math.ldexp(x, k))
        if a + 1 <= math.ldexp(y, k) and a < (1 << k):
            return DyadicInterval(a, k)
    raise ValueError(f"[{x}, {y}) contains no dyadic interval with k <= {MAX_DYADIC_LEVEL}")


def largest_dyadic_subbox(box: AxisBox) -> DyadicBox:
    for a, b in zip(box.lo, box.hi):
        if not a < b:
            raise ValueError("box is degenerate along some axis")
    return DyadicBox(tuple(largest_dyadic_subinterval(a, b) for a, b in zip(box.lo, box.hi)))
