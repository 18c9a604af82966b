import cmath
import math

import pytest

from meixner_asym.auxiliary import BranchError, turning_points
from meixner_asym.parametrix import (
    IDENTITY,
    SIGMA1,
    SIGMA3,
    A_jump_residual,
    A_large_z_residual,
    A_matrix,
    A_sector_check,
    D_jump_residual,
    Matrix2C,
    N_jump_residual,
    N_matrix,
    composite_jump_residual,
)

TP = turning_points(0.5)


def test_matrix_basics():
    assert (SIGMA1 @ SIGMA1 - IDENTITY).max_abs() == 0
    assert SIGMA3.det() == -1
    m = Matrix2C(1, 2j, 3, 4)
    assert (m @ IDENTITY - m).max_abs() == 0
    assert m.scale(2).a12 == 4j
    with pytest.raises(ValueError):
        Matrix2C(float("inf"), 0, 0, 1)


@pytest.mark.parametrize("beta", [1.0, 1.5, 1.9])
def test_N_jump_on_band(beta):
    xs = [TP.a + (TP.b - TP.a) * (k + 0.5) / 50 for k in range(50)]
    assert max(N_jump_residual(x, TP, beta) for x in xs) <= 1e-6


def test_N_example_midpoint():
    assert N_jump_residual(0.5 * (TP.a + TP.b), TP, 1.5) <= 1e-6


def test_N_determinant_and_infinity():
    assert N_matrix(2j, TP, 1.0).det() == pytest.approx(1, abs=1e-14)
    for z in (3 + 1j, -4 - 2j, 10, 0.5 + 0.3j):
        assert N_matrix(z, TP, 1.4).det() == pytest.approx(1, abs=1e-13)
    assert (N_matrix(1e4 * cmath.exp(1j), TP, 1.5) - IDENTITY).max_abs() <= 1e-3


def test_N_analytic_off_band():
    # no jump across (-inf, a) or (b, inf) despite the principal-branch factors
    for x in (-3.0, 0.05, 8.0):
        up = N_matrix(complex(x, 1e-12), TP, 1.5)
        dn = N_matrix(complex(x, -1e-12), TP, 1.5)
        assert (up - dn).max_abs() <= 1e-9
    with pytest.raises(BranchError):
        N_matrix(2.0, TP, 1.5)


def test_A_jump_and_determinant():
    assert max(A_jump_residual(-10 + 20 * k / 49) for k in range(50)) <= 1e-6
    assert A_jump_residual(1.0) <= 1e-10
    assert A_matrix(1 + 1j).det() == pytest.approx(1 / (2 * math.pi), rel=1e-12)
    for z in (-3 + 2j, 4 - 1j, 0.5j):
        assert A_matrix(z).det() == pytest.approx(1 / (2 * math.pi), rel=1e-10)
    with pytest.raises(BranchError):
        A_matrix(2.0)


def test_A_rotated_form_matches_definition():
    from meixner_asym.special import airy_quartet

    for z, s in ((1 + 2j, 1), (-2 - 1j, -1)):
        q = airy_quartet(z)
        left = Matrix2C(q.ai, -1j * q.bi, 1j * q.aip, q.bip)
        right = Matrix2C(1, -s * 0.5, 0, 0.5)
        assert ((left @ right) - A_matrix(z)).max_abs() <= 1e-12 * left.max_abs()


def _decay(fn):
    res = [fn(r) for r in (50, 100, 200, 400)]
    return res, [res[i] / res[i + 1] for i in range(3)]


def test_A_large_z_limit_and_decay():
    res, ratios = _decay(lambda r: A_large_z_residual(r * cmath.exp(1j * math.pi / 4)))
    assert res[0] <= 1e-2
    assert all(abs(q / 2**1.5 - 1) <= 0.3 for q in ratios)


@pytest.mark.parametrize("sign", [1, -1])
def test_A_sector_form(sign):
    res, ratios = _decay(lambda r: A_sector_check(r * cmath.exp(sign * 2j * math.pi / 3), sign))
    assert res[0] <= 1e-2
    assert all(abs(q / 2**1.5 - 1) <= 0.3 for q in ratios)


def test_A_sector_rejects_bad_input():
    with pytest.raises(ValueError):
        A_sector_check(50, 1)
    with pytest.raises(ValueError):
        A_sector_check(50 * cmath.exp(2j), -1)


def test_composite_has_no_jump():
    xs = [1 + (TP.b - 1) * (k + 0.5) / 50 for k in range(50)]
    assert max(composite_jump_residual(x, 100, TP, 1.5) for x in xs) <= 1e-6


@pytest.mark.parametrize("y", [0.5, -0.5, 1.3])
def test_D_jump_across_imaginary_axis(y):
    assert D_jump_residual(y, 4, 1.0) <= 1e-4
    assert D_jump_residual(y, 60, 1.5) <= 1e-4
