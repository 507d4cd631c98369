import itertools

import numpy as np
import pytest

from dispersion.geometry import AxisBox, PointSet, largest_dyadic_subbox, volume
from dispersion.nets import (
    GeneratingMatrices,
    _compositions,
    builtin_matrices,
    digital_net,
    format_matrices,
    hammersley,
    hammersley_matrices,
    identity_matrices,
    load_matrices,
    net_dispersion_bound,
    parse_matrices,
    sobol_matrices,
    van_der_corput,
    verify_net_parameter,
)
from dispersion.solver import dispersion_exact


def bit_reverse(i, m):
    return int(format(i, f"0{m}b")[::-1], 2) / 2**m if m else 0.0


def as_set(T):
    return sorted(map(tuple, T.points.tolist()))


def test_van_der_corput_examples():
    assert van_der_corput(1).points.ravel().tolist() == [0.0, 0.5]
    assert van_der_corput(2).points.ravel().tolist() == [0.0, 0.5, 0.25, 0.75]
    assert van_der_corput(3).points[5, 0] == 0.625
    assert van_der_corput(6).points.ravel().tolist() == [bit_reverse(i, 6) for i in range(64)]
    with pytest.raises(ValueError):
        van_der_corput(21)


def test_hammersley_examples():
    assert hammersley(2).points.tolist() == [[0, 0], [0.25, 0.5], [0.5, 0.25], [0.75, 0.75]]
    assert hammersley(0).points.tolist() == [[0.0, 0.0]]
    with pytest.raises(ValueError):
        hammersley(17)


def test_digital_net_identity_is_van_der_corput():
    for m in range(1, 5):
        assert np.array_equal(digital_net(identity_matrices(1, m)).points, van_der_corput(m).points)


def test_digital_net_zero_matrix():
    T = digital_net(GeneratingMatrices(np.zeros((1, 1, 1), dtype=np.uint8)))
    assert T.points.ravel().tolist() == [0.0, 0.0]
    assert verify_net_parameter(T, 1).t_star == 1


def test_hammersley_matrices_reproduce_hammersley():
    for m in range(1, 7):
        assert as_set(digital_net(hammersley_matrices(m))) == as_set(hammersley(m))


def test_malformed_matrices():
    with pytest.raises(ValueError):
        GeneratingMatrices(np.zeros((2, 3, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        GeneratingMatrices(np.full((1, 2, 2), 2))


def test_compositions_colex():
    shapes = _compositions(2, 2)
    assert shapes == [(2, 0), (1, 1), (0, 2)]
    assert len(_compositions(3, 3)) == 10
    assert all(sum(c) == 3 for c in _compositions(3, 3))


def count_in_box(T, box):
    return int(np.sum(np.all((T.points >= box.lo) & (T.points < box.hi), axis=1)))


def brute_t_star(T, m):
    """t_star by listing every dyadic box explicitly."""
    d = T.dim
    for t in range(m + 1):
        ok = True
        for shape in itertools.product(range(m - t + 1), repeat=d):
            if sum(shape) != m - t:
                continue
            for a in itertools.product(*(range(2**k) for k in shape)):
                lo = tuple(ai / 2**k for ai, k in zip(a, shape))
                hi = tuple((ai + 1) / 2**k for ai, k in zip(a, shape))
                if count_in_box(T, AxisBox(lo, hi)) != 2**t:
                    ok = False
        if ok:
            return t
    return None


def test_hammersley3_report():
    rep = verify_net_parameter(hammersley(3), 3)
    assert rep.t_star == 0 == brute_t_star(hammersley(3), 3)
    assert rep.boxes_checked == 4 * 8
    assert rep.failure_example is None


def test_duplicate_point():
    rep = verify_net_parameter(PointSet([[0.3], [0.3]]), 1)
    assert rep.t_star == 1
    assert count_in_box(PointSet([[0.3], [0.3]]), rep.failure_example.to_box()) != 1


@pytest.mark.parametrize("m", range(0, 11))
def test_vdc_is_0_net(m):
    assert verify_net_parameter(van_der_corput(m), m).t_star == 0


@pytest.mark.parametrize("m", range(0, 11))
def test_hammersley_is_0_net(m):
    assert verify_net_parameter(hammersley(m), m).t_star == 0


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_identity_matrices_are_degenerate(m):
    # equal coordinates pass every single-axis split, so the check stops at m - 1
    T = digital_net(identity_matrices(2, m))
    rep = verify_net_parameter(T, m)
    assert rep.t_star == m - 1 == brute_t_star(T, m)
    assert count_in_box(T, rep.failure_example.to_box()) != 2 ** (m - 2)


def test_sobol_matches_brute_t(rng):
    for d, m in [(3, 4), (4, 3), (5, 3)]:
        T = digital_net(sobol_matrices(d, m))
        assert verify_net_parameter(T, m).t_star == brute_t_star(T, m)


def test_failure_example_is_first_bad_box():
    T = digital_net(identity_matrices(2, 3))
    rep = verify_net_parameter(T, 3)
    box = rep.failure_example
    assert [(iv.a, iv.k) for iv in box.intervals] == [(0, 1), (0, 1)]


def test_verify_requires_power_of_two():
    with pytest.raises(ValueError):
        verify_net_parameter(PointSet(np.full((3, 1), 0.2)), 2)
    with pytest.raises(ValueError):
        verify_net_parameter(hammersley(3), 2)


def test_net_dispersion_bound_examples():
    assert net_dispersion_bound(0, 8, 2) == 2.0**-4
    assert net_dispersion_bound(0, 4, 2) == 1.0
    with pytest.raises(ValueError):
        net_dispersion_bound(5, 4, 2)
    for d in (1, 2, 3):
        t = 5 * d
        for m in range(t, t + 12):
            b = net_dispersion_bound(t, m, d)
            assert b == min(1.0, 2.0 ** (7 * d - m))
            for n in (2**m, 2**m + 1, 2 ** (m + 1) - 1):
                assert b <= 2.0 ** (7 * d + 1) / n


@pytest.mark.parametrize("m", range(1, 9))
def test_net_bound_soundness(m):
    for T, d in ((van_der_corput(m), 1), (hammersley(m), 2)):
        t = verify_net_parameter(T, m).t_star
        assert dispersion_exact(T).value <= net_dispersion_bound(t, m, d)


def test_dyadic_rounding_soundness(rng):
    for T, m, d in ((van_der_corput(8), 8, 1), (hammersley(8), 8, 2)):
        target = 4.0**d * 2.0**-m
        hits = 0
        while hits < 300:
            ends = np.sort(rng.random((d, 2)), axis=1)
            box = AxisBox(tuple(ends[:, 0]), tuple(ends[:, 1]))
            if volume(box) < target:
                continue
            hits += 1
            sub = largest_dyadic_subbox(box)
            assert sub.volume >= 2.0**-m
            assert count_in_box(T, sub.to_box()) >= 1
            assert count_in_box(T, box) >= 1


def test_matrix_file_roundtrip(tmp_path):
    G = sobol_matrices(3, 5)
    path = tmp_path / "g.txt"
    path.write_text(format_matrices(G))
    assert np.array_equal(load_matrices(path).matrices, G.matrices)
    text = format_matrices(G)
    assert text.splitlines()[0] == "3 5"
    assert text.count("\n\n") == 2


def test_matrix_file_errors():
    with pytest.raises(ValueError):
        parse_matrices("")
    with pytest.raises(ValueError):
        parse_matrices("1 2\n10\n")
    with pytest.raises(ValueError):
        parse_matrices("1 2\n10\n2x\n")


def test_builtin_matrices():
    G = builtin_matrices("sobol_d8_m12")
    assert (G.dim, G.m) == (8, 12)
    assert np.array_equal(G.matrices, sobol_matrices(8, 12).matrices)
    assert np.array_equal(builtin_matrices("hammersley_m8").matrices, hammersley_matrices(8).matrices)
