import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest

from meixner_asym.special import (
    OMEGA,
    OMEGA2,
    PRINCIPAL,
    CutSpec,
    PoleError,
    PrecisionConfig,
    airy_coeffs,
    airy_log,
    airy_quartet,
    airy_scaled,
    branch_pow,
    log_gamma,
    log_gamma_remainder,
    mp_context,
)

AI0 = 0.355028053887817239260063186004
BI0 = 0.614926627446000735150922369094


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


def disc(radius, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius:
            out.append(z)
    return out


# branches --------------------------------------------------------------

def test_branch_pow_examples():
    assert branch_pow(1, 0.5) == 1
    assert cmath.isclose(branch_pow(-1, 0.5, PRINCIPAL), 1j, abs_tol=1e-15)
    assert cmath.isclose(branch_pow(-8, 2 / 3), 4 * cmath.exp(2j * math.pi / 3), rel_tol=1e-14)


def test_branch_pow_alternative_range_and_zero():
    # arg window (0, 2 pi]: -1 still has arg pi, -i now has arg 3 pi / 2
    cut = CutSpec.arg_range(0.0)
    assert cmath.isclose(branch_pow(-1j, 0.5, cut), cmath.exp(0.75j * math.pi), rel_tol=1e-14)
    assert branch_pow(0, 2.0) == 0
    with pytest.raises(ValueError):
        branch_pow(0, -0.5)


def test_precision_config_validates():
    with pytest.raises(ValueError):
        PrecisionConfig(bits=64)
    assert mp_context(256).prec == 256


# log gamma -------------------------------------------------------------

def test_log_gamma_examples():
    assert log_gamma(1) == 0
    assert log_gamma(2) == 0
    assert log_gamma(5).real == pytest.approx(math.log(24), rel=1e-14)
    assert log_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


def test_log_gamma_poles():
    for w in (0, -1, -7):
        with pytest.raises(PoleError):
            log_gamma(w)
    with pytest.raises(PoleError):
        log_gamma(-3, bits=200)


def test_log_gamma_against_mpmath():
    rng = random.Random(3)
    worst = 0.0
    for _ in range(400):
        w = complex(rng.uniform(-40, 60), rng.uniform(-60, 60))
        ref = complex(mpmath.loggamma(mpmath.mpc(w)))
        got = log_gamma(w)
        # away from the zeros at 1, 2 the relative error is the meaningful one
        worst = max(worst, abs(got - ref) / max(abs(ref), 1.0))
    assert worst <= 1e-12


def test_log_gamma_extended_precision():
    ctx = mp_context(300)
    w = ctx.mpc("3.25", "-7.5")
    val = log_gamma(complex(w), bits=300)
    ref = ctx.loggamma(w)
    assert abs(val - ref) <= abs(ref) * ctx.ldexp(1, -300 + 8)


def test_log_gamma_remainder_matches_definition():
    for w in (0.3 + 0.1j, 2.5, 40 + 3j, 1e6 + 5j):
        main = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi)
        ref = complex(mpmath.loggamma(mpmath.mpc(w))) - main
        assert abs(log_gamma_remainder(w) - ref) <= 1e-12 * max(1.0, abs(ref)) + 1e-9 * (abs(w) > 1e5)
    with pytest.raises(ValueError):
        log_gamma_remainder(-1 + 1j)


# Airy ------------------------------------------------------------------

def test_airy_coefficients():
    t = airy_coeffs(30)
    assert t.u[0] == t.v[0] == 1
    assert t.u[1] == Fraction(5, 72)
    assert t.v[1] == Fraction(-7, 72)
    for s in range(1, 8):
        closed = mpmath.gamma(3 * s + 0.5) / (54**s * mpmath.factorial(s) * mpmath.gamma(s + 0.5))
        assert float(t.u[s]) == pytest.approx(float(closed), rel=1e-14)
        assert t.v[s] == -Fraction(6 * s + 1, 6 * s - 1) * t.u[s]
    with pytest.raises(ValueError):
        airy_coeffs(31)


def test_airy_at_zero():
    q = airy_quartet(0)
    assert rel(q.ai, AI0) <= 1e-12
    assert rel(q.bi, BI0) <= 1e-12
    assert rel(q.aip, -0.258819403792806798405183560189) <= 1e-12
    assert airy_scaled(0) == q


def test_airy_wronskian_example():
    q = airy_quartet(2 + 3j)
    assert rel(q.ai * q.bip - q.aip * q.bi, 1 / math.pi) <= 1e-10


@pytest.mark.parametrize("seed", [1, 2])
def test_airy_against_mpmath(seed):
    for z in disc(50, 120, seed):
        q = airy_quartet(z)
        ref = airy_quartet(z, bits=120)
        for got, want in zip(q, ref):
            want = complex(want)
            if abs(want) > 1e-250:
                assert rel(got, want) <= 1e-10, (z, got, want)


def test_airy_log_survives_overflow():
    ai, aip, bi, bip = airy_log(1e4)
    zeta = (2 / 3) * 1e6
    assert ai.log_mag == pytest.approx(-zeta - 0.25 * math.log(1e4) - math.log(2 * math.sqrt(math.pi)), rel=1e-12)
    assert bi.log_mag == pytest.approx(zeta - 0.25 * math.log(1e4) - 0.5 * math.log(math.pi), rel=1e-12)


def test_airy_scaled_leading_term():
    s = airy_scaled(100)
    assert rel(s.ai, 100 ** -0.25 / (2 * math.sqrt(math.pi))) <= 2e-3


def test_airy_scaled_consistency():
    z = 5 + 5j
    s, q = airy_scaled(z), airy_quartet(z)
    zeta = (2 / 3) * z**1.5
    assert rel(s.ai * cmath.exp(-zeta), q.ai) <= 1e-10
    assert rel(s.aip * cmath.exp(-zeta), q.aip) <= 1e-10
    assert rel(s.bi * cmath.exp(zeta), q.bi) <= 1e-10
    assert rel(s.bip * cmath.exp(zeta), q.bip) <= 1e-10


def test_airy_scaled_large_argument_and_cut():
    s = airy_scaled(1e6)
    assert all(math.isfinite(abs(v)) for v in s)
    with pytest.raises(ValueError):
        airy_scaled(-4.0)
    up, dn = airy_scaled(-4.0, side=1), airy_scaled(-4.0, side=-1)
    assert rel(up.ai, dn.ai.conjugate()) <= 1e-12


def test_connection_and_sum_rule():
    for z in disc(10, 100, 7):
        q, q1, q2 = airy_quartet(z), airy_quartet(OMEGA * z), airy_quartet(OMEGA2 * z)
        scale = max(abs(q.ai), abs(q.bi))
        assert abs(2 * OMEGA * q1.ai - (-q.ai + 1j * q.bi)) <= 1e-10 * scale
        terms = (q.ai, OMEGA * q1.ai, OMEGA2 * q2.ai)
        assert abs(sum(terms)) <= 1e-12 * max(abs(t) for t in terms)


@pytest.mark.parametrize("r", [20, 40, 80])
@pytest.mark.parametrize("ang", [0.0, math.pi / 4, -math.pi / 4, 2 * math.pi / 3, -2 * math.pi / 3])
def test_five_term_asymptotics_match(r, ang):
    # five-term partial sum agrees with the evaluator to about the sixth term
    z = r * cmath.exp(1j * ang)
    t = airy_coeffs(6)
    zeta = (2 / 3) * z**1.5
    partial = sum((-1) ** s * float(t.u[s]) / zeta**s for s in range(5))
    sixth = abs(float(t.u[5]) / zeta**5)
    approx = z**-0.25 / (2 * math.sqrt(math.pi)) * cmath.exp(-zeta) * partial
    ai = airy_log(z)[0]
    # the reference itself carries rounding of order |zeta| eps from exp(-zeta)
    assert ai.relative_distance(approx) <= 2 * sixth + 1e-15 * abs(zeta) + 1e-13
