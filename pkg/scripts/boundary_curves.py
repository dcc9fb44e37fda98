"""Write the stitched-vs-sub-Gamma boundary curves for both families and report crossovers.

    python3 scripts/boundary_curves.py --out-dir results/
"""
import argparse
import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from subpsi.cgf import CgfFamily
from subpsi.cli import FIGURE_ALPHAS
from subpsi.stitching import BoundaryParams, howard_gamma_boundary, scalar_boundary


@dataclass
class Config:
    c: float = 1.0
    delta: float = 0.01
    vmin: float = 1.0
    vmax: float = 1e8
    points: int = 400
    out_dir: Path = Path("results")


def crossovers(v, ours, theirs):
    """v values where the sign of ours - theirs flips."""
    s = np.sign(ours - theirs)
    return v[1:][s[1:] != s[:-1]]


def run(cfg):
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    v = np.logspace(math.log10(cfg.vmin), math.log10(cfg.vmax), cfg.points)
    for name in ("poisson", "gamma"):
        f = CgfFamily.from_name(name, cfg.c)
        path = cfg.out_dir / f"boundary_{name}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["alpha", "v", f"ours_{name}", "howard_gamma", "ratio"])
            for a in FIGURE_ALPHAS:
                p = BoundaryParams(alpha=a, delta=cfg.delta)
                ours, howard = scalar_boundary(v, f, p), howard_gamma_boundary(v, cfg.c, p)
                for row in zip(v, ours, howard, ours / howard):
                    w.writerow([a] + ["%.12g" % x for x in row])
                flips = ", ".join("%.4g" % x for x in crossovers(v, ours, howard)) or "none"
                print(f"{name:8s} alpha={a:<5} ratio in [{(ours / howard).min():.4f}, "
                      f"{(ours / howard).max():.4f}], sign changes at v = {flips}")
        print(f"wrote {path}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--c", type=float, default=Config.c)
    ap.add_argument("--delta", type=float, default=Config.delta)
    ap.add_argument("--points", type=int, default=Config.points)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    a = ap.parse_args()
    run(Config(c=a.c, delta=a.delta, points=a.points, out_dir=a.out_dir))


if __name__ == "__main__":
    main()
