"""Base-2 digital nets and exhaustive (t, m, d)-net verification."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .geometry import DyadicBox, DyadicInterval, PointSet


@dataclass(frozen=True)
class GeneratingMatrices:
    """``d`` binary ``m x m`` matrices; entry ``[j][r, c]`` is row r, column c."""

    matrices: np.ndarray  # shape (d, m, m), uint8

    def __post_init__(self):
        arr = np.asarray(self.matrices)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValueError(f"expected shape (d, m, m), got {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("need at least one matrix")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("matrix entries must be 0 or 1")
        object.__setattr__(self, "matrices", arr.astype(np.uint8))

    @property
    def dim(self) -> int:
        return int(self.matrices.shape[0])

    @property
    def m(self) -> int:
        return int(self.matrices.shape[1])


@dataclass(frozen=True)
class NetCheckReport:
    m: int
    dim: int
    t_star: int
    boxes_checked: int
    failure_example: Optional[DyadicBox]


def _radical_inverse(i: np.ndarray, m: int) -> np.ndarray:
    out = np.zeros(i.shape, dtype=np.float64)
    for r in range(m):
        out += ((i >> r) & 1) * math.ldexp(1.0, -(r + 1))
    return out


def van_der_corput(m: int) -> PointSet:
    """The ``2^m`` base-2 radical inverses of ``0 .. 2^m - 1``, in index order."""
    if not 0 <= m <= 20:
        raise ValueError(f"m must be in [0, 20], got {m}")
    i = np.arange(1 << m, dtype=np.int64)
    return PointSet(_radical_inverse(i, m).reshape(-1, 1), dim=1)


def hammersley(m: int) -> PointSet:
    """``(i / 2^m, radical_inverse(i))`` for ``i < 2^m``; a (0, m, 2)-net."""
    if not 0 <= m <= 16:
        raise ValueError(f"m must be in [0, 16], got {m}")
    i = np.arange(1 << m, dtype=np.int64)
    x = np.ldexp(i.astype(np.float64), -m)
    return PointSet(np.column_stack([x, _radical_inverse(i, m)]), dim=2)


def digital_net(G: GeneratingMatrices) -> PointSet:
    """Point ``i`` has digits ``C_j b mod 2`` where ``b`` is i's bit vector, LSB first."""
    d, m = G.dim, G.m
    i = np.arange(1 << m, dtype=np.int64)
    bits = ((i[:, None] >> np.arange(m)) & 1).astype(np.int64)  # (2^m, m)
    weights = np.ldexp(1.0, -np.arange(1, m + 1))
    coords = np.empty((1 << m, d))
    for j in range(d):
        digits = (bits @ G.matrices[j].T.astype(np.int64)) & 1
        coords[:, j] = digits @ weights
    return PointSet(coords, dim=d)


def identity_matrices(d: int, m: int) -> GeneratingMatrices:
    return GeneratingMatrices(np.stack([np.eye(m, dtype=np.uint8)] * d))


def hammersley_matrices(m: int) -> GeneratingMatrices:
    """Anti-diagonal (gives ``i / 2^m``) and identity (radical inverse)."""
    eye = np.eye(m, dtype=np.uint8)
    return GeneratingMatrices(np.stack([eye[::-1], eye]))


# (degree, coefficient bits, initial direction numbers) for Sobol' dimensions 2..8
_SOBOL_PARAMS = [
    (1, 0, [1]),
    (2, 1, [1, 3]),
    (3, 1, [1, 3, 1]),
    (3, 2, [1, 1, 1]),
    (4, 1, [1, 1, 3, 3]),
    (4, 4, [1, 3, 5, 13]),
    (5, 2, [1, 1, 5, 5, 17]),
]


def sobol_matrices(d: int, m: int) -> GeneratingMatrices:
    """Sobol' generating matrices for ``d <= 8``; the first is the identity."""
    if not 1 <= d <= 8:
        raise ValueError("built-in Sobol' matrices cover 1 <= d <= 8")
    mats = [np.eye(m, dtype=np.uint8)]
    for s, a, init in _SOBOL_PARAMS[: d - 1]:
        mk = list(init[:m])
        for k in range(len(mk), m):
            new = mk[k - s] ^ (mk[k - s] << s)
            for r in range(1, s):
                if (a >> (s - 1 - r)) & 1:
                    new ^= mk[k - r] << r
            mk.append(new)
        C = np.zeros((m, m), dtype=np.uint8)
        for c in range(m):
            # direction number m_c / 2^(c+1); its r-th binary digit fills row r
            for r in range(c + 1):
                C[r, c] = (mk[c] >> (c - r)) & 1
        mats.append(C)
    return GeneratingMatrices(np.stack(mats))


def _compositions(total: int, parts: int):
    """All non-negative ``parts``-tuples summing to ``total``, colexicographic order."""
    combos = [
        tuple(b - a - 1 for a, b in zip((-1,) + cut, cut + (total + parts - 1,)))
        for cut in itertools.combinations(range(total + parts - 1), parts - 1)
    ]
    return sorted(combos, key=lambda c: c[::-1])


def _check_level(pts: np.ndarray, m: int, t: int):
    """Boxes checked and the first failing dyadic box (or None) for net level t."""
    n, d = pts.shape
    want = 1 << t
    checked = 0
    for shape in _compositions(m - t, d):
        index = np.zeros(n, dtype=np.int64)
        valid = np.ones(n, dtype=bool)
        for j, k in enumerate(shape):
            a = np.floor(np.ldexp(pts[:, j], k)).astype(np.int64)
            valid &= a < (1 << k)
            index = (index << k) | np.minimum(a, (1 << k) - 1)
        nboxes = 1 << (m - t)
        counts = np.bincount(index[valid], minlength=nboxes)
        checked += nboxes
        bad = np.flatnonzero(counts != want)
        if bad.size:
            flat = int(bad[0])
            ivs = []
            for k in reversed(shape):
                ivs.append(DyadicInterval(flat & ((1 << k) - 1), k))
                flat >>= k
            return checked, DyadicBox(tuple(reversed(ivs)))
    return checked, None


def verify_net_parameter(T, m: int) -> NetCheckReport:
    """Smallest ``t`` for which ``T`` is a ``(t, m, d)``-net in base 2."""
    T = T if isinstance(T, PointSet) else PointSet(T)
    n = T.n
    if n < 1 or n & (n - 1):
        raise ValueError(f"point count {n} is not a power of two")
    if n != 1 << m:
        raise ValueError(f"point count {n} does not equal 2^m = {1 << m}")
    total = 0
    failure = None
    for t in range(m + 1):
        checked, bad = _check_level(T.points, m, t)
        total += checked
        if bad is None:
            return NetCheckReport(m, T.dim, t, total, failure)
        failure = bad
    raise ValueError("no t <= m passes; some point lies on an upper face of the cube")


def net_dispersion_bound(t: int, m: int, d: int) -> float:
    """``min(1, 2^(t - m + 2d))``."""
    if t < 0 or m < 0 or d < 1:
        raise ValueError("need t, m >= 0 and d >= 1")
    if t > m:
        raise ValueError(f"t = {t} exceeds m = {m}")
    e = t - m + 2 * d
    return 1.0 if e >= 0 else math.ldexp(1.0, e)


def parse_matrices(text: str) -> GeneratingMatrices:
    """Read the ``d m`` header plus ``d`` blank-line separated ``m x m`` blocks."""
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[0]:
        lines.pop(0)
    if not lines:
        raise ValueError("empty matrix file")
    try:
        d, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}; expected 'd m'") from None
    rows = [ln for ln in lines[1:] if ln]
    if len(rows) != d * m:
        raise ValueError(f"expected {d * m} matrix rows, found {len(rows)}")
    mats = np.zeros((d, m, m), dtype=np.uint8)
    for idx, row in enumerate(rows):
        if len(row) != m or set(row) - {"0", "1"}:
            raise ValueError(f"bad matrix row {row!r}")
        mats[idx // m, idx % m] = [int(ch) for ch in row]
    return GeneratingMatrices(mats)


def format_matrices(G: GeneratingMatrices) -> str:
    blocks = ["\n".join("".join(str(int(v)) for v in row) for row in C) for C in G.matrices]
    return f"{G.dim} {G.m}\n" + "\n\n".join(blocks) + "\n"


def load_matrices(path) -> GeneratingMatrices:
    return parse_matrices(Path(path).read_text())


def builtin_matrices(name: str) -> GeneratingMatrices:
    """Matrices shipped in the package data directory, e.g. ``sobol_d8_m12``."""
    text = resources.files("dispersion").joinpath("data").joinpath(f"{name}.txt").read_text()
    return parse_matrices(text)
