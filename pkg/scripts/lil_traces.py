"""Iterated-logarithm ratios and degenerate-regression growth orders across seeds.

    python3 scripts/lil_traces.py --seeds 50 --horizon 1000000
"""
import argparse

import numpy as np

from subpsi.sim import ProcessKind, ProcessSpec, lil_ratio_trace


def summarize(label, t, values):
    q = np.quantile(values, [0.05, 0.5, 0.95], axis=0)
    print(label)
    print("         t      q05   median      q95")
    for i in range(0, len(t), max(1, len(t) // 10)):
        print(f"{t[i]:10d} {q[0, i]:8.3f} {q[1, i]:8.3f} {q[2, i]:8.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--horizon", type=int, default=2**20)
    a = ap.parse_args()

    traces = [lil_ratio_trace(ProcessSpec(ProcessKind.GAUSSIAN_LINEAR, 1, a.horizon, seed=s))
              for s in range(a.seeds)]
    summarize("gaussian walk: |S| / sqrt(2 V log log V)", traces[0].t,
              np.array([tr.ratio for tr in traces]))

    horizon = min(a.horizon, 10**5)
    deg = [lil_ratio_trace(ProcessSpec(ProcessKind.DEGENERATE_2D, 2, horizon, seed=s))
           for s in range(a.seeds)]
    t = deg[0].t
    summarize("degenerate regression: log kappa(V) / log t", t,
              np.array([tr.log_kappa_over_log_t for tr in deg]))
    summarize("degenerate regression: ||V^{-1/2} S||^2 / log t", t,
              np.array([tr.norm_sq_over_log_t for tr in deg]))


if __name__ == "__main__":
    main()
