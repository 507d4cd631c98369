"""Restarted hill climbing for point sets of small dispersion.

Dispersion is piecewise constant in the point positions, so a move is kept
only if it strictly lowers the exact value; no temperature schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from ._accel import worker_count
from .bounds import lower_bounds
from .geometry import PointSet
from .solver import CapacityError, dispersion_exact

MAX_N = 24
MAX_D = 4

# numpy's PCG64 bit generator; per-restart streams use seed + restart index
RNG_ALGORITHM = "numpy.random.PCG64"


class SearchInvariantError(RuntimeError):
    """A search result contradicts a proven lower bound: the solver is wrong."""


@dataclass(frozen=True)
class SearchConfig:
    n: int
    d: int
    restarts: int = 8
    iterations: int | None = None  # None: 50 per point
    step: float = 0.25
    cooling: float = 0.9
    seed: int = 0
    allow_large: bool = False

    def __post_init__(self):
        if self.n < 0 or self.d < 1:
            raise ValueError("need n >= 0 and d >= 1")
        if self.iterations is None:
            object.__setattr__(self, "iterations", 50 * max(self.n, 1))
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be at least 1")
        if not 0.0 < self.cooling < 1.0:
            raise ValueError("cooling must lie in (0, 1)")
        if not self.step > 0.0:
            raise ValueError("step must be positive")


@dataclass
class SearchTrace:
    best_set: PointSet
    best_disp: float
    restart_best: list = field(default_factory=list)
    evaluations: int = 0


def proven_floor(n: int, d: int) -> float:
    if n == 0:
        return 1.0
    if d == 1:
        return 1.0 / (n + 1)
    return lower_bounds(n, d)[3]


def _centered_hammersley(n: int) -> np.ndarray:
    bits = max(1, (n - 1).bit_length())
    i = np.arange(n)
    y = np.zeros(n)
    for r in range(bits):
        y += ((i >> r) & 1) * math.ldexp(1.0, -(r + 1))
    y += math.ldexp(1.0, -(bits + 1)) if n > 1 else 0.5
    return np.column_stack([(i + 0.5) / n, y])


def _stratified(n: int, d: int) -> np.ndarray:
    g = max(1, math.ceil(round(n ** (1.0 / d), 12)))
    cells = np.array(np.unravel_index(np.arange(g**d), (g,) * d)).T
    pick = np.round(np.linspace(0, g**d - 1, n)).astype(int) if n > 1 else [g**d // 2]
    return (cells[pick] + 0.5) / g


def initial_points(cfg: SearchConfig, restart: int, rng: np.random.Generator) -> np.ndarray:
    if restart > 0:
        return rng.random((cfg.n, cfg.d))
    if cfg.d == 2:
        return _centered_hammersley(cfg.n)
    return _stratified(cfg.n, cfg.d)


def _run_restart(cfg: SearchConfig, restart: int):
    rng = np.random.default_rng(cfg.seed + restart)
    pts = initial_points(cfg, restart, rng)
    cur = dispersion_exact(PointSet(pts, dim=cfg.d)).value
    evals = 1
    step = cfg.step
    for it in range(cfg.iterations):
        i = rng.integers(cfg.n)
        noise = rng.uniform(-step, step, cfg.d)
        cand = pts.copy()
        cand[i] = np.clip(cand[i] + noise, 0.0, 1.0)
        v = dispersion_exact(PointSet(cand, dim=cfg.d)).value
        evals += 1
        if v < cur:
            pts, cur = cand, v
        if (it + 1) % cfg.n == 0:
            step *= cfg.cooling
    return pts, cur, evals


def minimize_dispersion(cfg: SearchConfig, workers: int | None = None) -> SearchTrace:
    """Best point set found over all restarts; deterministic for a given seed."""
    if not cfg.allow_large and (cfg.n > MAX_N or cfg.d > MAX_D):
        raise CapacityError(
            f"n={cfg.n}, d={cfg.d} exceeds the search guideline n <= {MAX_N}, d <= {MAX_D}"
        )
    if cfg.n == 0:
        empty = PointSet(np.zeros((0, cfg.d)), dim=cfg.d)
        return SearchTrace(empty, 1.0, [1.0] * cfg.restarts, 0)

    workers = workers or worker_count()
    if workers > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda r: _run_restart(cfg, r), range(cfg.restarts)))
    else:
        runs = [_run_restart(cfg, r) for r in range(cfg.restarts)]

    best_r = min(range(len(runs)), key=lambda r: (runs[r][1], r))
    best_pts, best_disp, _ = runs[best_r]
    best_set = PointSet(best_pts, dim=cfg.d)
    trace = SearchTrace(
        best_set=best_set,
        best_disp=best_disp,
        restart_best=[r[1] for r in runs],
        evaluations=sum(r[2] for r in runs),
    )

    check = dispersion_exact(best_set).value
    if check != best_disp:
        raise SearchInvariantError(f"re-evaluation gave {check!r}, search recorded {best_disp!r}")
    floor = proven_floor(cfg.n, cfg.d)
    if best_disp < floor:
        raise SearchInvariantError(f"dispersion {best_disp!r} below proven floor {floor!r}")
    return trace


def cd_trace(d: int, n_list, template: SearchConfig) -> list[tuple[int, float]]:
    """``(n, n * best_disp)`` for each n: empirical upper values of n disp*(n, d)."""
    out = []
    for n in n_list:
        trace = minimize_dispersion(replace(template, n=int(n), d=int(d)))
        out.append((int(n), n * trace.best_disp))
    return out
