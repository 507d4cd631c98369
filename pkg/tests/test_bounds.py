import math

import pytest

from dispersion.bounds import (
    bounds_report,
    c_d_bounds,
    first_primes,
    inverse_N_lower,
    lower_bounds,
    upper_bounds,
)


def test_first_primes():
    assert first_primes(10) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert first_primes(0) == ()
    ps = first_primes(200)
    assert len(ps) == 200 and ps[-1] == 1223
    assert all(all(p % q for q in range(2, int(p**0.5) + 1)) for p in ps)


def test_lower_examples():
    assert lower_bounds(5, 2)[1] == 0.125
    assert lower_bounds(10, 16)[2] == pytest.approx(1 / 14, rel=1e-15)
    assert lower_bounds(3, 2) == (0.25, 0.15625, 0.0625, 0.25)


def test_upper_examples():
    assert upper_bounds(1, 2)[0] == 2.0
    assert upper_bounds(1, 3)[0] == pytest.approx(math.log2(24), rel=1e-15)
    assert upper_bounds(1, 2)[1] == 15.0


@pytest.mark.parametrize("bad", [(0, 2), (3, 1), (2.5, 3)])
def test_invalid_inputs(bad):
    with pytest.raises(ValueError):
        lower_bounds(*bad)
    with pytest.raises(ValueError):
        upper_bounds(*bad)


def test_crossover_at_54():
    for d in range(2, 61):
        rt, larcher, best = upper_bounds(1, d)
        assert (rt < larcher) == (d <= 53)
        assert best == min(rt, larcher)


def test_inverse_N():
    assert inverse_N_lower(1 / 8, 16) == 4.0
    assert inverse_N_lower(0.25 - 1e-12, 16) < 1e-9
    assert inverse_N_lower(0.1, 1) == 0.0
    for eps in (0.0, 0.25, -1.0):
        with pytest.raises(ValueError):
            inverse_N_lower(eps, 4)


def test_c_d_examples():
    assert c_d_bounds(2) == (1.25, 15.0)
    assert c_d_bounds(32) == (1.25, 225.0)
    assert math.log2(32) / 4 == 1.25
    assert c_d_bounds(1024)[0] == 2.5
    with pytest.raises(ValueError):
        c_d_bounds(1)


def test_c_d_grows_along_powers_of_two():
    vals = [c_d_bounds(2**k)[0] for k in range(5, 40)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_sandwich_never_inverts():
    for d in range(2, 65):
        for n in range(1, 10_001):
            lo = lower_bounds(n, d)[3]
            assert math.log2(lo) < upper_bounds(n, d)[2]


def test_lower_main_monotone():
    for n in (1, 5, 50, 500):
        vals = [lower_bounds(n, d)[2] for d in range(2, 300)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
    for d in (2, 3, 16, 1000):
        vals = [lower_bounds(n, d)[2] for n in range(1, 300)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_report_fields():
    rep = bounds_report(5, 2, eps=0.1)
    assert rep.lower_best == max(rep.lower_trivial, rep.lower_dj, rep.lower_main)
    assert rep.upper_best_log2 == min(rep.upper_rote_tichy_log2, rep.upper_larcher_log2)
    assert rep.upper_best == pytest.approx(2**rep.upper_best_log2)
    assert rep.lower_best <= rep.upper_best
    big = bounds_report(3, 400)
    assert big.upper_best is None or math.isfinite(big.upper_best)
    assert bounds_report(1, 2000).upper_best is None
