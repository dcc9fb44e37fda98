"""Monte Carlo crossing rates for every process kind against its matching boundary.

    python3 scripts/coverage_sweep.py --reps 500 --horizon 5000
"""
import argparse
import csv
import sys
import time
from dataclasses import dataclass

from subpsi.cgf import CgfFamily
from subpsi.sim import Covariates, ProcessKind, ProcessSpec, coverage_experiment
from subpsi.vector_bound import VectorBoundaryParams


@dataclass
class Case:
    label: str
    spec: ProcessSpec
    boundary: str
    family: CgfFamily = None
    two_sided: bool = False


def cases(horizon):
    K, C = ProcessKind, Covariates
    return [
        Case("scalar normal", ProcessSpec(K.GAUSSIAN_LINEAR, 1, horizon), "scalar"),
        Case("scalar normal two-sided", ProcessSpec(K.GAUSSIAN_LINEAR, 1, horizon), "scalar",
             two_sided=True),
        Case("scalar bernstein (gamma)", ProcessSpec(K.BERNSTEIN_MOMENT, 1, horizon, c=0.5), "scalar"),
        Case("scalar bennett (poisson)", ProcessSpec(K.BOUNDED_BENNETT, 1, horizon), "scalar"),
        Case("scalar cauchy self-normalized", ProcessSpec(K.CONDITIONALLY_SYMMETRIC, 1, horizon),
             "scalar", CgfFamily.normal()),
        Case("vector rotating d=3", ProcessSpec(K.GAUSSIAN_LINEAR, 3, horizon, covariates=C.ROTATING),
             "vector"),
        Case("vector sphere d=5", ProcessSpec(K.GAUSSIAN_LINEAR, 5, horizon, covariates=C.SPHERE),
             "vector"),
        Case("vector bennett d=3", ProcessSpec(K.BOUNDED_BENNETT, 3, horizon), "vector"),
        Case("vector cauchy d=2", ProcessSpec(K.CONDITIONALLY_SYMMETRIC, 2, horizon,
                                              covariates=C.SPHERE), "vector", CgfFamily.normal()),
        Case("degenerate regression d=2", ProcessSpec(K.DEGENERATE_2D, 2, horizon), "vector"),
        Case("regression d=3", ProcessSpec(K.GAUSSIAN_LINEAR, 3, horizon, covariates=C.SPHERE),
             "regression"),
        Case("empirical bernstein d=2", ProcessSpec(K.BOUNDED_EMP_BERN, 2, horizon, mean=(0.1, 0.0)),
             "empbern"),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=500)
    ap.add_argument("--horizon", type=int, default=5000)
    ap.add_argument("--delta", type=float, default=0.05)
    ap.add_argument("--out", default=None)
    a = ap.parse_args()
    vp = VectorBoundaryParams.make(delta=a.delta)
    out = open(a.out, "w", newline="") if a.out else sys.stdout
    w = csv.writer(out)
    w.writerow(["case", "reps", "crossings", "rate", "threshold", "pass", "seconds"])
    for case in cases(a.horizon):
        start = time.perf_counter()
        rep = coverage_experiment(case.spec, case.boundary, vp, a.reps, family=case.family,
                                  two_sided=case.two_sided)
        w.writerow([case.label, rep.n_reps, rep.crossings, "%.4f" % rep.rate,
                    "%.4f" % rep.threshold(), int(rep.passes()),
                    "%.1f" % (time.perf_counter() - start)])
        out.flush()


if __name__ == "__main__":
    main()
