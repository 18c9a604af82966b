"""Command-line front end: ``meixner-asym <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from fractions import Fraction

from .asymptotics import SingularPointError, classify_region, pi_n_asym
from .auxiliary import BranchError, default_delta, turning_points
from .exact import MeixnerParams, OracleError, monic_eval
from .scaled import ScaledComplex
from .special import PrecisionConfig
from .verify import SUITES, fit_order

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_SINGULAR, EXIT_ORACLE = 0, 1, 2, 3, 4


class ArgError(ValueError):
    pass


@dataclass(frozen=True)
class CompareRow:
    n: int
    c: float
    beta: float
    re_z: float
    im_z: float
    formula_used: str
    log_abs_exact: float
    log_abs_asym: float
    phase_exact: float
    phase_asym: float
    rel_err: float


COMPARE_HEADER = [f.name for f in fields(CompareRow)]


@dataclass(frozen=True)
class SweepSpec:
    c: float
    beta: float
    n_list: tuple[int, ...]
    points: tuple[complex, ...]
    delta: float | None
    bits: int

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise ArgError("--n-list must be strictly increasing")


# parsing ---------------------------------------------------------------

def _parse_real(text: str) -> float:
    text = text.strip()
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ArgError(f"cannot parse number {text!r}") from exc


def _parse_z(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        try:
            return complex(parts[0].replace("i", "j"))
        except ValueError as exc:
            raise ArgError(f"cannot parse --z {text!r}") from exc
    if len(parts) != 2:
        raise ArgError("--z takes 're,im'")
    return complex(_parse_real(parts[0]), _parse_real(parts[1]))


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ArgError(f"cannot parse integer list {text!r}") from exc


def _grid_points(grid: str | None, step: float | None, counts: str | None = None) -> list[complex]:
    """Row-major grid: imaginary part outer (ascending), real part inner."""
    if grid is None:
        return []
    vals = [_parse_real(t) for t in grid.split(",")]
    if len(vals) != 4:
        raise ArgError("--grid takes 're0,re1,im0,im1'")
    r0, r1, i0, i1 = vals
    if r1 < r0 or i1 < i0:
        return []
    if step is not None:
        if step <= 0:
            raise ArgError("--step must be positive")
        nx = int(math.floor((r1 - r0) / step + 1e-9)) + 1
        ny = int(math.floor((i1 - i0) / step + 1e-9)) + 1
        xs = [r0 + k * step for k in range(nx)]
        ys = [i0 + k * step for k in range(ny)]
    else:
        nx, ny = _parse_ints(counts or "100,100")
        if nx < 1 or ny < 1:
            return []
        xs = [r0 + (r1 - r0) * k / (nx - 1) if nx > 1 else r0 for k in range(nx)]
        ys = [i0 + (i1 - i0) * k / (ny - 1) if ny > 1 else i0 for k in range(ny)]
    return [complex(x, y) for y in ys for x in xs]


def _params(args, n: int | None = None) -> MeixnerParams:
    try:
        return MeixnerParams(_parse_real(args.c), _parse_real(args.beta), args.n if n is None else n)
    except ValueError as exc:
        raise ArgError(str(exc)) from exc


# output ----------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def _render(header: list[str], rows: list[tuple], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "jsonl":
        for row in rows:
            obj = {k: (v if not isinstance(v, float) or math.isfinite(v) else repr(v)) for k, v in zip(header, row)}
            buf.write(json.dumps(obj) + "\n")
        return buf.getvalue()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=os.path.basename(target))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# subcommands -----------------------------------------------------------

def _describe(label: str, v: ScaledComplex) -> dict:
    out = {"which": label, "log_abs": v.log_mag, "phase": v.phase}
    if v.is_zero or v.log_mag < 700:
        c = complex(v)
        out["value"] = _fmt(c.real) if abs(c.imag) <= 1e-12 * max(abs(c), 1e-300) else _fmt(c)
    return out


def cmd_eval(args) -> int:
    p = _params(args)
    z = _parse_z(args.z)
    point = args.point or ("raw" if args.mode == "exact" else "scaled")
    if point == "raw":
        x, zs = z, (z + p.beta / 2) / p.n if p.n else z
    else:
        zs, x = z, p.n * z - p.beta / 2
    delta = _parse_real(args.delta) if args.delta else None
    records = []
    exact = asym = None
    if args.mode in ("exact", "both"):
        ov = monic_eval(p, x, PrecisionConfig(bits=args.bits))
        exact = ov.to_scaled()
        rec = _describe("exact", exact)
        rec.update(bits_used=ov.bits_used, achieved_rel_err=ov.achieved_rel_err)
        records.append(rec)
    if args.mode in ("asym", "both"):
        res = pi_n_asym(zs, p, delta, side=args.side)
        asym = res.value
        rec = _describe("asym", asym)
        rec.update(formula=res.formula.value, region=res.region.kind.value)
        records.append(rec)
    if exact is not None and asym is not None:
        records.append({"which": "compare", "rel_err": asym.relative_distance(exact)})
    for rec in records:
        if args.format == "jsonl":
            print(json.dumps(rec))
        else:
            print(" ".join(f"{k}={_fmt(v)}" for k, v in rec.items()))
    return EXIT_OK


def _compare_row(task) -> tuple:
    c, beta, n, z, delta, bits = task
    p = MeixnerParams(c, beta, n)
    nan = math.nan
    try:
        res = pi_n_asym(z, p, delta)
    except SingularPointError:
        return astuple(CompareRow(n, c, beta, z.real, z.imag, "singular", nan, nan, nan, nan, nan))
    ov = monic_eval(p, n * z - beta / 2, PrecisionConfig(bits=bits)).to_scaled()
    a = res.value
    return astuple(CompareRow(n, c, beta, z.real, z.imag, res.formula.value, ov.log_mag, a.log_mag,
                              ov.phase, a.phase, a.relative_distance(ov)))


def cmd_compare(args) -> int:
    c, beta = _parse_real(args.c), _parse_real(args.beta)
    _params(args, n=0)
    n_list = _parse_ints(args.n_list) if args.n_list else (args.n,)
    if any(n < 1 for n in n_list):
        raise ArgError("compare needs n >= 1")
    pts = _grid_points(args.grid, args.step, args.points) if args.grid else ([_parse_z(args.z)] if args.z else [])
    spec = SweepSpec(c, beta, n_list, tuple(pts), _parse_real(args.delta) if args.delta else None, args.bits)
    tasks = [(spec.c, spec.beta, n, z, spec.delta, spec.bits) for n in spec.n_list for z in spec.points]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_compare_row, tasks))
    else:
        rows = [_compare_row(t) for t in tasks]
    _emit(_render(COMPARE_HEADER, rows, args.format), args.out)
    if args.fit and len(spec.n_list) > 1:
        for z in spec.points:
            errs = [r[-1] for r in rows if complex(r[3], r[4]) == z]
            if all(math.isfinite(e) and e > 0 for e in errs):
                fit = fit_order(spec.n_list, errs)
                print(f"# z={_fmt(z.real)},{_fmt(z.imag)} order={fit.order:.4f} fit_residual={fit.residual:.4g}",
                      file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        fn = SUITES[name]
        reports.append(fn(seed=args.seed) if "seed" in fn.__code__.co_varnames else fn())
    payload = {"passed": all(r.passed for r in reports), "suites": [r.to_dict() for r in reports]}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK if payload["passed"] else EXIT_VERIFY


def cmd_regions(args) -> int:
    c = _parse_real(args.c)
    tp = turning_points(c)
    delta = _parse_real(args.delta) if args.delta else default_delta(tp)
    grid = args.grid or f"-1,2,{-3 * delta!r},{3 * delta!r}"
    pts = _grid_points(grid, args.step, args.points)
    rows = [(z.real, z.imag, classify_region(z, delta).kind.value, float(tp.a), float(tp.b)) for z in pts]
    _emit(_render(["re_z", "im_z", "kind", "a", "b"], rows, args.format), args.out)
    return EXIT_OK


def cmd_turning_points(args) -> int:
    text = args.c.strip()
    try:
        c = Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ArgError(f"cannot parse --c {text!r}") from exc
    tp = turning_points(c)
    row = (str(tp.a), str(tp.b), str(tp.a * tp.b), default_delta(tp))
    _emit(_render(["a", "b", "ab", "default_delta"], [row], args.format), args.out)
    return EXIT_OK


# wiring ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", default="0.5", help="Meixner parameter c in (0, 1)")
    common.add_argument("--beta", default="1", help="Meixner parameter beta in [1, 2)")
    common.add_argument("--n", type=int, default=100, help="polynomial degree")
    common.add_argument("--n-list", help="comma-separated increasing degrees")
    common.add_argument("--z", help="point as 're,im' (use --z=-1,0 for negative values)")
    common.add_argument("--grid", help="rectangle 're0,re1,im0,im1'")
    common.add_argument("--step", type=float, help="grid spacing")
    common.add_argument("--points", help="grid counts 'nx,ny' when no --step is given")
    common.add_argument("--delta", help="half-height of the inner rectangle")
    common.add_argument("--bits", type=int, default=1024, help="starting oracle precision")
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common.add_argument("--out", help="output path (written atomically)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="meixner-asym", description="Large-degree Meixner polynomial asymptotics")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate one point")
    ev.add_argument("--mode", choices=("exact", "asym", "both"), default="both")
    ev.add_argument("--point", choices=("raw", "scaled"),
                    help="interpret --z as the polynomial argument x (raw) or as z with x = n z - beta/2 "
                         "(scaled); default raw for exact mode, scaled otherwise")
    ev.add_argument("--side", type=int, choices=(1, -1), help="limit from above (+1) or below (-1) on cuts")
    ev.set_defaults(func=cmd_eval)

    cmp_ = sub.add_parser("compare", parents=[common], help="exact vs asymptotic sweep")
    cmp_.add_argument("--fit", action="store_true", help="report fitted convergence orders on stderr")
    cmp_.set_defaults(func=cmd_compare)

    ver = sub.add_parser("verify", parents=[common], help="run self-check suites")
    ver.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    ver.set_defaults(func=cmd_verify)

    reg = sub.add_parser("regions", parents=[common], help="region map over a grid")
    reg.set_defaults(func=cmd_regions)

    tps = sub.add_parser("turning-points", parents=[common], help="print a, b and the default delta")
    tps.set_defaults(func=cmd_turning_points)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.bits < 128:
        print("error: --bits must be at least 128", file=sys.stderr)
        return EXIT_ARGS
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_ARGS
    try:
        return args.func(args)
    except SingularPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ArgError, BranchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
