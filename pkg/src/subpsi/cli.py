"""
Command-line front end. Every command writes CSV (header first, floats with
12 significant digits) to --out or standard output.

Exit codes: 0 success, 1 coverage violated, 2 usage error.
"""
import argparse
import csv
import math
import sys

import numpy as np

from .baselines import bercu_touati_radius, bercu_touati_union_radius, logdet_regression_radius
from .cgf import CgfFamily
from .emp_bernstein import EmpBernState, Form, eb_confidence_set, eb_radius, eb_update, eb_width
from .errors import DomainError
from .regression import RegressionState, confidence_ellipsoid
from .rng import CounterRNG
from .sim import BOUNDARY_KINDS, Covariates, ProcessKind, ProcessSpec, coverage_experiment
from .stitching import BoundaryParams, StitchFn, ell, howard_gamma_boundary, scalar_boundary
from .vector_bound import CoverBound, VectorBoundaryParams

FIGURE_ALPHAS = (1.01, 1.05, 1.25, 1.5)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.12g" % x


def write_csv(rows, header, out):
    stream = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(stream)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    finally:
        if out:
            stream.close()


def _pick(value, default):
    return default if value is None else value


def _boundary_params(args, alpha=1.05, delta=0.05):
    return BoundaryParams(alpha=_pick(args.alpha, alpha), rho=_pick(args.rho, 1.0),
                          delta=_pick(args.delta, delta), stitch=StitchFn(_pick(args.s, 2.0)))


def _vector_params(args, **kw):
    return VectorBoundaryParams(_boundary_params(args, **kw), beta=_pick(args.beta, 2.0),
                                epsilon=_pick(args.eps, 0.5),
                                cover_bound=CoverBound(_pick(args.cover_bound, "face")))


def _family(args, default="normal"):
    return CgfFamily.from_name(_pick(args.family, default), _pick(args.c, 1.0))


def cmd_boundary_table(args):
    family = _pick(args.family, "poisson")
    if family not in ("poisson", "gamma"):
        raise DomainError("boundary-table compares the poisson or gamma family")
    c = _pick(args.c, 1.0)
    f = CgfFamily.from_name(family, c)
    alphas = [args.alpha] if args.alpha is not None else list(FIGURE_ALPHAS)
    v = np.logspace(math.log10(args.vmin), math.log10(args.vmax), args.points)
    rows = []
    for a in alphas:
        p = _boundary_params(args, alpha=a, delta=0.01)
        ours, howard = scalar_boundary(v, f, p), howard_gamma_boundary(v, c, p)
        for vi, o, h in zip(v, ours, howard):
            rows.append(([a] if len(alphas) > 1 else []) + [vi, o, h])
    header = (["alpha"] if len(alphas) > 1 else []) + ["v", f"ours_{family}", "howard_gamma"]
    write_csv(rows, header, args.out)
    return 0


def cmd_coverage(args):
    kind = ProcessKind(args.kind)
    d = _pick(args.d, 2 if kind is ProcessKind.DEGENERATE_2D else 1)
    spec = ProcessSpec(kind=kind, d=d, horizon=_pick(args.horizon, 1000), seed=_pick(args.seed, 0),
                       covariates=Covariates(args.covariates), c=_pick(args.c, 1.0))
    vp = _vector_params(args)
    family = _family(args) if args.family is not None else None
    rep = coverage_experiment(spec, args.boundary, vp, _pick(args.reps, 200), family=family,
                              scale=args.scale, two_sided=args.two_sided)
    ok = rep.passes()
    write_csv([[rep.n_reps, rep.crossings, rep.rate, rep.std_err, rep.threshold(), ok]],
              ["reps", "crossings", "rate", "std_err", "threshold", "pass"], args.out)
    print(f"crossing rate {rep.rate:.4f} +/- {rep.std_err:.4f} "
          f"(allowed {rep.threshold():.4f}): {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return 0 if ok else 1


def _grid(horizon, points):
    return np.unique(np.round(np.logspace(0, math.log10(horizon), points)).astype(int))


def cmd_ar_demo(args):
    """Shrinkage AR(1) slope estimate against the fixed-time tail bound.

    Our radius is the univariate two-sided stitched bound for |a_hat - a|:
    (sqrt(2 alpha ell(V) at delta/2) + sqrt(rho) |a| 1{V < rho}) / sqrt(V v rho),
    where V is the running sum of squared lagged values.
    """
    a, horizon = args.a, _pick(args.horizon, 10000)
    p = _boundary_params(args, alpha=1.5, delta=0.01)
    two = p.replace(delta=p.delta / 2)
    noise = CounterRNG(_pick(args.seed, 0)).normal(horizon + 1)
    y = np.zeros(horizon + 1)
    for t in range(1, horizon + 1):
        y[t] = a * y[t - 1] + noise[t]
    lagged, current = y[:-1], y[1:]
    V = np.cumsum(lagged**2)
    xy = np.cumsum(lagged * current)
    rows = []
    for t in _grid(horizon, args.points):
        v = V[t - 1]
        vv = max(v, p.rho)
        a_hat = xy[t - 1] / vv
        extra = math.sqrt(p.rho) * abs(a) if v < p.rho else 0.0
        ours = (math.sqrt(2 * p.alpha * ell(v, two)) + extra) / math.sqrt(vv)
        rows.append([t, ours, bercu_touati_radius(t, p.delta), bercu_touati_union_radius(t, p.delta),
                     abs(a_hat - a)])
    write_csv(rows, ["t", "our_radius", "bercu_pointwise", "bercu_union", "abs_error"], args.out)
    return 0


def cmd_regression_demo(args):
    d, horizon = _pick(args.d, 3), _pick(args.horizon, 5000)
    vp = _vector_params(args)
    f = _family(args)
    rng = CounterRNG(_pick(args.seed, 0))
    theta = np.ones(d) / math.sqrt(d)
    X = rng.normal((horizon, d))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y = X @ theta + rng.normal(horizon)
    state = RegressionState(d, rho=vp.rho, theta_norm_bound=float(np.linalg.norm(theta)))
    rows, covered = [], True
    marks = set(_grid(horizon, args.points).tolist())
    for t in range(1, horizon + 1):
        state.update(X[t - 1], Y[t - 1])
        if t in marks:
            e = confidence_ellipsoid(state, f, vp)
            inside = e.contains(theta)
            covered &= inside
            rows.append([t, e.radius, logdet_regression_radius(state.gram, vp.rho, vp.base.delta,
                                                               state.theta_norm_bound),
                         e.statistic(theta), inside])
    write_csv(rows, ["t", "our_radius", "logdet_radius", "statistic", "contained"], args.out)
    print(f"theta* contained at every checkpoint: {covered}", file=sys.stderr)
    return 0


def cmd_empbern_demo(args):
    d, horizon = _pick(args.d, 2), _pick(args.horizon, 10000)
    vp = _vector_params(args)
    rng = CounterRNG(_pick(args.seed, 0))
    mu = np.full(d, 0.1 / math.sqrt(d))
    g = rng.normal((horizon, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    x = mu + 0.4 * args.spread * g * rng.uniform((horizon, 1)) ** (1 / d)
    state = EmpBernState(d)
    rows, covered = [], True
    marks = set(_grid(horizon, args.points).tolist())
    for t in range(1, horizon + 1):
        eb_update(state, x[t - 1])
        if t in marks:
            cs = eb_confidence_set(state, vp)
            inside = cs.contains(mu)
            covered &= inside
            rows.append([t, cs.radius, eb_radius(state, vp, Form.GAMMA_CLOSED), eb_width(state, vp),
                         cs.statistic(mu), inside])
    write_csv(rows, ["t", "exact_radius", "gamma_closed_radius", "width", "statistic", "contained"],
              args.out)
    print(f"mean contained at every checkpoint: {covered}", file=sys.stderr)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["normal", "gamma", "poisson", "exponential"])
    common.add_argument("--c", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--eps", type=float)
    common.add_argument("--rho", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--s", type=float)
    common.add_argument("--d", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--reps", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out")
    common.add_argument("--cover-bound", choices=["simple", "face"])
    common.add_argument("--points", type=int, default=60)

    parser = argparse.ArgumentParser(prog="subpsi", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary-table", parents=[common], help="stitched vs sub-Gamma boundary")
    p.add_argument("--vmin", type=float, default=1.0)
    p.add_argument("--vmax", type=float, default=1e8)
    p.set_defaults(run=cmd_boundary_table, points=200)

    p = sub.add_parser("coverage", parents=[common], help="Monte Carlo crossing rate")
    p.add_argument("--kind", default="gaussian_linear", choices=[k.value for k in ProcessKind])
    p.add_argument("--boundary", default="scalar", choices=BOUNDARY_KINDS)
    p.add_argument("--covariates", default="constant", choices=[c.value for c in Covariates])
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--two-sided", action="store_true")
    p.set_defaults(run=cmd_coverage)

    p = sub.add_parser("ar-demo", parents=[common], help="AR(1) slope radii")
    p.add_argument("--a", type=float, default=0.5)
    p.set_defaults(run=cmd_ar_demo)

    p = sub.add_parser("regression-demo", parents=[common], help="online regression ellipsoid")
    p.set_defaults(run=cmd_regression_demo)

    p = sub.add_parser("empbern-demo", parents=[common], help="empirical Bernstein mean set")
    p.add_argument("--spread", type=float, default=1.0)
    p.set_defaults(run=cmd_empbern_demo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.alpha is not None and not args.alpha > 1:
        parser.error("--alpha must exceed 1")
    if args.reps is not None and args.reps < 1:
        parser.error("--reps must be positive")
    try:
        return args.run(args)
    except ValueError as exc:  # DomainError, NormError, InvalidSpec
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
