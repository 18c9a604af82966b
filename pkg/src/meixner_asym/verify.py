"""Named suites of numerical self-checks with machine-readable results."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .asymptotics import asym_inside, asym_outside, pi_n_asym
from .auxiliary import (
    default_delta,
    l_constant,
    log_airy_args,
    phi,
    phi_tilde,
    turning_points,
    v_linear,
)
from .exact import (
    MeixnerParams,
    meixner_rational,
    monic_eval,
    orthogonality_residual,
)
from .parametrix import (
    A_jump_residual,
    A_large_z_residual,
    A_matrix,
    A_sector_check,
    IDENTITY,
    N_jump_residual,
    N_matrix,
    composite_jump_residual,
    D_jump_residual,
)
from .special import OMEGA, OMEGA2, PrecisionConfig, airy_quartet, log_gamma

__all__ = ["Check", "SuiteReport", "ConvergenceFit", "fit_order", "run_suite", "SUITES"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tol: float, detail: str = "", *, upper: bool = True) -> Check:
        residual = float(residual)
        ok = residual <= tol if upper else residual >= tol
        chk = Check(name, residual, tol, bool(ok and not math.isnan(residual)), detail)
        self.checks.append(chk)
        return chk

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}


@dataclass(frozen=True)
class ConvergenceFit:
    order: float
    residual: float
    intercept: float


def fit_order(ns, errors) -> ConvergenceFit:
    """Least-squares fit of ``log err = intercept - order * log n``."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    if len(x) < 2:
        raise ValueError("need at least two points to fit an order")
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    rms = math.sqrt(float(res[0]) / len(x)) if len(res) else 0.0
    return ConvergenceFit(order=-float(coef[0]), residual=rms, intercept=float(coef[1]))


def _grid(radius: float, count: int, seed: int) -> list[complex]:
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius:
            pts.append(z)
    return pts


def suite_airy(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("airy")
    wr = wr_scaled = 0.0
    for z in _grid(4.0, 100, seed):
        q = airy_quartet(z)
        wr = max(wr, abs((q.ai * q.bip - q.aip * q.bi) * math.pi - 1))
    pts = _grid(10.0, 100, seed)
    conn = sumrule = 0.0
    for z in pts:
        q = airy_quartet(z)
        # in the sectors where Ai and Bi both grow the Wronskian is a
        # cancellation between products of size e^{2|Re zeta|}
        prod = math.pi * max(abs(q.ai * q.bip), abs(q.aip * q.bi), 1 / math.pi)
        wr_scaled = max(wr_scaled, abs((q.ai * q.bip - q.aip * q.bi) * math.pi - 1) / prod)
        q1 = airy_quartet(OMEGA * z)
        q2 = airy_quartet(OMEGA2 * z)
        # one side of each identity is recessive somewhere in the disc, so
        # measure against the size of the terms being combined
        scale = max(abs(q.ai), abs(q.bi))
        conn = max(conn, abs(2 * OMEGA * q1.ai - (-q.ai + 1j * q.bi)) / scale,
                   abs(2 * OMEGA2 * q2.ai - (-q.ai - 1j * q.bi)) / scale)
        terms = (q.ai, OMEGA * q1.ai, OMEGA2 * q2.ai)
        sumrule = max(sumrule, abs(sum(terms)) / max(abs(t) for t in terms))
    rep.add("wronskian", wr, 1e-10, "max |pi W - 1| over 100 points, |z| <= 4")
    rep.add("wronskian_conditioned", wr_scaled, 1e-10, "|pi W - 1| over the product size, |z| <= 10")
    rep.add("connection", conn, 1e-10, "2 w Ai(w z) = -Ai + i Bi and its twin, relative to max(|Ai|, |Bi|)")
    rep.add("sum_rule", sumrule, 1e-12, "Ai + w Ai(w z) + w^2 Ai(w^2 z), relative to max term")
    q0 = airy_quartet(0)
    g23 = cmath.exp(log_gamma(2 / 3)).real
    rep.add("ai0", abs(q0.ai - 3 ** (-2 / 3) / g23) / (3 ** (-2 / 3) / g23), 1e-12)
    rep.add("bi0", abs(q0.bi - 3 ** (-1 / 6) / g23) / (3 ** (-1 / 6) / g23), 1e-12)
    return rep


def suite_phi(c: float = 0.5, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("phi")
    tp = turning_points(c)
    a, b = float(tp.a), float(tp.b)
    rep.add("ab", abs(a * b - 1), 1e-15)
    rep.add("phi_b", abs(phi(b * (1 + 1e-15), tp)), 1e-10, "limit along x > b")
    rep.add("phi_tilde_a", abs(phi_tilde(a * (1 - 1e-15), tp)), 1e-10, "limit along x < a")
    half = 0.5 * math.log(c)
    rep.add("phi_tilde_0", abs(phi_tilde(complex(1e-14, 1e-14), tp) - half) / abs(half), 1e-10,
            "limit from the upper half plane")
    rng = random.Random(seed)
    worst = 0.0
    for sign in (1, -1):
        for _ in range(200):
            z = complex(rng.uniform(-3, 9), sign * rng.uniform(1e-3, 4))
            diff = phi_tilde(z, tp) - phi(z, tp)
            expect = sign * 1j * math.pi * (1 - z)
            worst = max(worst, abs(diff - expect) / max(1.0, abs(expect)))
    rep.add("tilde_minus_phi", worst, 1e-12, "200 random points per half plane")
    slope = 0.0
    for x in np.linspace(a + 0.05, b - 0.05, 20):
        d = 1e-3
        predicted = -2 * math.atan(math.sqrt((1 - a * x) / (b * x - 1)))
        for s in (1, -1):
            slope = max(slope, abs(phi(complex(x, s * d), tp).real / d - predicted) / abs(predicted))
    rep.add("re_phi_slope", slope, 0.1, "Re phi(x +- i d)/d against its predicted slope, d = 1e-3")
    large = 0.0
    for r in (1e3, 1e4):
        for ang in (0.0, 1.0, 2.5, -2.5):
            z = r * cmath.exp(1j * ang)
            rem = -phi(z, tp) + v_linear(z, c) / 2 + l_constant(tp) / 2 - cmath.log(z)
            large = max(large, abs(rem) * r)
    rep.add("large_z_remainder", large, 10.0, "|z| * |log z - phi + v/2 + l/2| stays bounded")
    args_ok = 0.0
    for x in np.linspace(a + 0.01, b - 0.01, 30):
        lf, lft = log_airy_args(complex(x, 0), 100, tp, side=1)
        args_ok = max(args_ok, abs(lf.imag - math.pi), abs(lft.imag + math.pi))
    rep.add("arg_F_on_band", args_ok, 1e-9, "arg F = pi, arg F~ = -pi from above on (a, b)")
    return rep


def suite_parametrix(c: float = 0.5, beta: float = 1.5, n: int = 100) -> SuiteReport:
    rep = SuiteReport("parametrix")
    tp = turning_points(c)
    a, b = float(tp.a), float(tp.b)
    xs = [a + (b - a) * (k + 0.5) / 50 for k in range(50)]
    rep.add("N_jump", max(N_jump_residual(x, tp, beta) for x in xs), 1e-6, "50 points on (a, b)")
    rep.add("A_jump", max(A_jump_residual(-10 + 20 * k / 49) for k in range(50)), 1e-6, "50 points on [-10, 10]")
    rep.add("det_A", abs(A_matrix(1 + 1j).det() * 2 * math.pi - 1), 1e-12)
    rep.add("det_N", max(abs(N_matrix(z, tp, beta).det() - 1) for z in (2j, 3 + 1j, -2 - 0.5j, 8)), 1e-12)
    rep.add("N_infinity", (N_matrix(1e4 * cmath.exp(0.7j), tp, beta) - IDENTITY).max_abs(), 1e-3)
    xs2 = [1 + (b - 1) * (k + 0.5) / 50 for k in range(50)]
    rep.add("composite_no_jump", max(composite_jump_residual(x, n, tp, beta) for x in xs2), 1e-6)
    radii = (50, 100, 200, 400)
    for label, fn in (
        ("A_large_z", lambda r: A_large_z_residual(r * cmath.exp(1j * math.pi / 4))),
        ("A_sector_upper", lambda r: A_sector_check(r * cmath.exp(2j * math.pi / 3), 1)),
        ("A_sector_lower", lambda r: A_sector_check(r * cmath.exp(-2j * math.pi / 3), -1)),
    ):
        res = [fn(r) for r in radii]
        rep.add(label, res[0], 1e-2, "residual at |z| = 50")
        ratios = [res[i] / res[i + 1] for i in range(len(res) - 1)]
        target = 2 ** 1.5
        worst = max(abs(q / target - 1) for q in ratios)
        rep.add(label + "_decay", worst, 0.3, "per-doubling ratios " + ", ".join(f"{q:.3f}" for q in ratios))
    jumps = [D_jump_residual(y, n, beta) for y in (0.3, -0.3, 0.5, 1.7)]
    rep.add("D_jump", max(jumps), 1e-4, "imaginary axis, offset 1e-6")
    return rep


def suite_oracle(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("oracle")
    params = MeixnerParams(0.5, 1.5, 0)
    worst_margin = 0.0
    ok = True
    for n in range(5):
        for p_idx in range(5):
            chk = orthogonality_residual(n, p_idx, params, 400, bits=512)
            ok &= chk.within
            worst_margin = max(worst_margin, float(chk.residual / (chk.tail_bound + chk.rounding)))
    rep.add("orthogonality", worst_margin, 1.0, "max residual / certified bound over n, p <= 4")
    rng = random.Random(seed)
    worst = Fraction(0)
    for _ in range(20):
        x = Fraction(rng.randint(-400, 400), rng.randint(1, 40))
        for n, beta, c in ((5, Fraction(3, 2), Fraction(1, 2)), (8, Fraction(1), Fraction(1, 3))):
            lhs = meixner_rational(n, beta, 1 / c, -x - beta)
            rhs = c**n * meixner_rational(n, beta, c, x)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), Fraction(1, 10**40)))
    rep.add("connection_formula", float(worst), 1e-30, "20 random rationals, exact arithmetic")
    val = monic_eval(MeixnerParams(0.5, 1.0, 256), 3 * 256 - 0.5, PrecisionConfig(bits=1024))
    rep.add("precision_doubling", val.achieved_rel_err, 1e-20, f"n=256, z=3 converged at {val.bits_used} bits")
    return rep


def convergence_errors(c: float, beta: float, z: complex, ns, bits: int = 2048) -> list[float]:
    """Pointwise relative errors of the asymptotic value against the oracle."""
    out = []
    for n in ns:
        p = MeixnerParams(c, beta, n)
        exact = monic_eval(p, n * z - beta / 2, PrecisionConfig(bits=bits)).to_scaled()
        out.append(pi_n_asym(z, p).value.relative_distance(exact))
    return out


def window_median_errors(c: float, beta: float, z: float, ns, half_width: float = 0.05,
                         bits: int = 512) -> list[float]:
    """Median relative error over the lattice points ``x = k - beta/2`` near ``n z``.

    On the oscillatory part of the real axis single-point errors are
    dominated by how close the point sits to a zero; the median over a short
    window is a stable statistic.
    """
    out = []
    for n in ns:
        p = MeixnerParams(c, beta, n)
        lo, hi = math.ceil((z - half_width) * n), math.floor((z + half_width) * n)
        errs = []
        for k in range(lo, hi + 1):
            zk = k / n
            exact = monic_eval(p, k - beta / 2, PrecisionConfig(bits=bits)).to_scaled()
            errs.append(pi_n_asym(zk, p).value.relative_distance(exact))
        out.append(float(np.median(errs)))
    return out


CONVERGENCE_POINTS = (7.0, 3.0, 0.5, -1.0)
CONVERGENCE_NS = (32, 64, 128, 256)


def suite_convergence(c: float = 0.5, betas=(1.0, 1.5)) -> SuiteReport:
    rep = SuiteReport("convergence")
    for beta in betas:
        for z in CONVERGENCE_POINTS:
            errs = window_median_errors(c, beta, z, CONVERGENCE_NS)
            fit = fit_order(CONVERGENCE_NS, errs)
            tag = f"beta={beta:g},z={z:g}"
            rep.add(f"order[{tag}]", fit.order, 0.8, f"fit residual {fit.residual:.3g}; errors "
                    + ", ".join(f"{e:.3g}" for e in errs), upper=False)
            rep.add(f"err256[{tag}]", errs[-1], 0.02)
    p = MeixnerParams(c, 1.5, 200)
    tp = turning_points(c)
    d = default_delta(tp)
    pts = [0.98, 1.02] + [complex(0.5, s * (d + e)) for s in (1, -1) for e in (0.02, -0.02)]
    worst = max(asym_inside(z, p).value.relative_distance(asym_outside(z, p).value) for z in pts)
    rep.add("boundary_overlap", worst, 10 / p.n, "inside vs outside formula near the rectangle edge")
    return rep


SUITES = {
    "airy": suite_airy,
    "phi": suite_phi,
    "parametrix": suite_parametrix,
    "oracle": suite_oracle,
    "convergence": suite_convergence,
}


def run_suite(name: str) -> list[SuiteReport]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return [SUITES[name]()]
