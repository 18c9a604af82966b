import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meixner_asym.asymptotics import (
    Formula,
    RegionKind,
    SingularPointError,
    asym_inside,
    asym_outside,
    classify_region,
    pi_n_asym,
)
from meixner_asym.auxiliary import default_delta, turning_points
from meixner_asym.exact import MeixnerParams, monic_eval
from meixner_asym.special import PrecisionConfig
from meixner_asym.verify import fit_order, window_median_errors

TP = turning_points(0.5)
DELTA = default_delta(TP)


def oracle(p, z, bits=1024):
    return monic_eval(p, p.n * z - p.beta / 2, PrecisionConfig(bits=bits)).to_scaled()


def test_classify_region():
    assert classify_region(0.5, DELTA).kind is RegionKind.INSIDE
    assert classify_region(-0.3, DELTA).kind is RegionKind.OUTSIDE
    assert classify_region(0.5 + 2j * DELTA, DELTA).kind is RegionKind.OUTSIDE
    assert classify_region(1.0, DELTA).kind is RegionKind.BOUNDARY
    assert classify_region(0.5 + 1j * (DELTA + 5e-10), DELTA).kind is RegionKind.BOUNDARY
    assert classify_region(0.5 + 1j * (DELTA + 2e-9), DELTA).kind is RegionKind.OUTSIDE
    with pytest.raises(ValueError):
        classify_region(0.5, 0.0)


def test_outside_example_against_oracle():
    p = MeixnerParams(0.5, 1.0, 100)
    res = asym_outside(7, p)
    assert res.value.relative_distance(oracle(p, 7, bits=2048)) <= 0.05
    assert res.value.phase in (0.0, math.pi)


def test_inside_example_against_oracle():
    p = MeixnerParams(0.5, 1.5, 100)
    res = asym_inside(0.5, p)
    assert res.value.relative_distance(oracle(p, 0.5)) <= 0.05


def test_inside_real_on_real_axis():
    res = asym_inside(0.3, MeixnerParams(0.5, 1.0, 50))
    assert abs(math.sin(res.value.phase)) <= 1e-10


def test_schwarz_reflection_example():
    p = MeixnerParams(0.5, 1.5, 80)
    z = 2 + 0.5j
    assert asym_outside(z.conjugate(), p).value.relative_distance(asym_outside(z, p).value.conjugate()) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 9), st.floats(0.02, 3))
def test_schwarz_reflection_property(x, y):
    p = MeixnerParams(0.5, 1.25, 60)
    z = complex(x, y)
    up, dn = pi_n_asym(z, p), pi_n_asym(z.conjugate(), p)
    assert dn.value.relative_distance(up.value.conjugate()) <= 1e-10


def test_negative_axis_two_sided():
    p = MeixnerParams(0.5, 1.5, 200)
    up = asym_outside(complex(-1, 1e-8), p).value
    dn = asym_outside(complex(-1, -1e-8), p).value
    assert up.relative_distance(dn) <= 1 / p.n
    s_up = asym_outside(-1, p, side=1).value
    s_dn = asym_outside(-1, p, side=-1).value
    assert s_up.relative_distance(s_dn) <= 1 / p.n


def test_overlap_near_right_edge():
    p = MeixnerParams(0.5, 1.5, 200)
    for z in (0.98, 1.02):
        assert asym_inside(z, p).value.relative_distance(asym_outside(z, p).value) <= 10 / p.n


def test_dispatch_and_boundary_nudge():
    p = MeixnerParams(0.5, 1.5, 200)
    assert pi_n_asym(0.5, p).formula is Formula.INSIDE
    assert pi_n_asym(7, p).formula is Formula.OUTSIDE
    inner = pi_n_asym(1.0, p)
    outer = pi_n_asym(1.0, p, prefer="outside")
    assert inner.region.kind is RegionKind.BOUNDARY
    assert inner.formula is Formula.INSIDE and inner.z_eval.real < 1
    assert outer.formula is Formula.OUTSIDE and outer.z_eval.real > 1
    assert inner.value.relative_distance(outer.value) <= 10 / p.n
    top = pi_n_asym(0.5 + 1j * DELTA, p)
    assert top.formula is Formula.INSIDE and top.z_eval.imag < DELTA


def test_singular_points():
    p = MeixnerParams(0.5, 1.5, 50)
    for z in (0.0, TP.a, TP.b, TP.b + 5e-7j):
        with pytest.raises(SingularPointError):
            pi_n_asym(z, p)
    pi_n_asym(TP.b + 1e-5, p)


def test_aux_values_recorded():
    res = pi_n_asym(2 + 1j, MeixnerParams(0.5, 1.5, 40))
    assert res.aux.F is not None and res.aux.D is not None
    assert res.aux.W == pytest.approx(1, abs=1e-3)


@pytest.mark.parametrize("z", [7.0, 0.4 + 0.02j, -2 + 1j, 3 + 2j])
def test_no_overflow_at_huge_degree(z):
    res = pi_n_asym(z, MeixnerParams(0.5, 1.5, 10**6))
    assert math.isfinite(res.value.log_mag)
    assert res.value.log_mag > 1e6


@pytest.mark.parametrize("z", [3 + 0.05j, 0.5 + 0.04j, 7.0, -1.0])
def test_pointwise_convergence_off_oscillatory_axis(z):
    ns = (32, 64, 128, 256)
    errs = []
    for n in ns:
        p = MeixnerParams(0.5, 1.5, n)
        errs.append(pi_n_asym(z, p).value.relative_distance(oracle(p, z, bits=512)))
    assert fit_order(ns, errs).order >= 0.9
    assert errs[-1] <= 0.02


@pytest.mark.parametrize("beta", [1.0, 1.5])
@pytest.mark.parametrize("z", [0.5, 3.0])
def test_windowed_convergence_on_oscillatory_axis(beta, z):
    ns = (32, 64, 128, 256)
    errs = window_median_errors(0.5, beta, z, ns)
    assert fit_order(ns, errs).order >= 0.8
