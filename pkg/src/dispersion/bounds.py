"""Closed-form lower and upper bounds on the minimal dispersion.

Upper bounds are kept as base-2 logarithms since both ``2^(7d+1)`` and the
primorial-type product overflow doubles long before d gets interesting.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

import numpy as np


@lru_cache(maxsize=None)
def first_primes(count: int) -> tuple[int, ...]:
    """The first ``count`` primes by a sieve of Eratosthenes."""
    if count <= 0:
        return ()
    if count < 6:
        limit = 13
    else:
        # p_k < k (ln k + ln ln k) for k >= 6
        limit = int(count * (math.log(count) + math.log(math.log(count)))) + 1
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve)[:count])


@lru_cache(maxsize=None)
def _log2_prime_product(count: int) -> float:
    return math.fsum(math.log2(p) for p in first_primes(count))


def _check_nd(n: int, d: int):
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d}")


def lower_bounds(n: int, d: int) -> tuple[float, float, float, float]:
    """(trivial, Dumitrescu-Jiang, log2(d)-bound, best)."""
    _check_nd(n, d)
    trivial = 1.0 / (n + 1)
    dj = 5.0 / (4.0 * (n + 5))
    ld = math.log2(d)
    main = ld / (4.0 * (n + ld))
    return trivial, dj, main, max(trivial, dj, main)


def upper_bounds(n: int, d: int) -> tuple[float, float, float]:
    """log2 of the Rote-Tichy and Larcher bounds and of the smaller one."""
    _check_nd(n, d)
    ln = math.log2(n)
    rt = (d - 1) + _log2_prime_product(d - 1) - ln
    larcher = 7 * d + 1 - ln
    return rt, larcher, min(rt, larcher)


def inverse_N_lower(eps: float, d: int) -> float:
    """Lower bound ``(1 - 4 eps) log2(d) / (4 eps)`` on the point count for dispersion eps."""
    if not 0.0 < eps < 0.25:
        raise ValueError(f"eps must lie in (0, 1/4), got {eps}")
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")
    return (1.0 - 4.0 * eps) * math.log2(d) / (4.0 * eps)


def c_d_bounds(d: int) -> tuple[float, float]:
    """(lower bound on c_d, log2 of the upper bound)."""
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d}")
    return max(1.25, math.log2(d) / 4.0), float(7 * d + 1)


def _linear(log2_value: float) -> Optional[float]:
    try:
        return math.pow(2.0, log2_value)
    except OverflowError:
        return None


@dataclass(frozen=True)
class BoundsReport:
    n: int
    d: int
    lower_trivial: float
    lower_dj: float
    lower_main: float
    lower_best: float
    upper_rote_tichy_log2: float
    upper_larcher_log2: float
    upper_best_log2: float
    c_d_lower: float
    c_d_upper_log2: float
    upper_best: Optional[float] = None
    inverse_N_lower: Optional[float] = None
    eps: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)


def bounds_report(n: int, d: int, eps: Optional[float] = None) -> BoundsReport:
    trivial, dj, main, best = lower_bounds(n, d)
    rt, larcher, ubest = upper_bounds(n, d)
    cl, cu = c_d_bounds(d)
    return BoundsReport(
        n=n,
        d=d,
        lower_trivial=trivial,
        lower_dj=dj,
        lower_main=main,
        lower_best=best,
        upper_rote_tichy_log2=rt,
        upper_larcher_log2=larcher,
        upper_best_log2=ubest,
        c_d_lower=cl,
        c_d_upper_log2=cu,
        upper_best=_linear(ubest),
        inverse_N_lower=None if eps is None else inverse_N_lower(eps, d),
        eps=eps,
    )
