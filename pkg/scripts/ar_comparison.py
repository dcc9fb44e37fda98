"""AR(1) slope radii over time, averaged over seeds, next to the fixed-time tail bound.

    python3 scripts/ar_comparison.py --seeds 20 --horizon 100000 --out results/ar.csv
"""
import argparse
import csv
import io
import sys
from contextlib import redirect_stdout

import numpy as np

from subpsi.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--horizon", type=int, default=100_000)
    ap.add_argument("--a", type=float, default=0.5)
    ap.add_argument("--out", default=None)
    a = ap.parse_args()

    tables = []
    for s in range(a.seeds):
        buf = io.StringIO()
        with redirect_stdout(buf):
            cli_main(["ar-demo", "--seed", str(s), "--horizon", str(a.horizon), "--a", str(a.a)])
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        header, tables = rows[0], tables + [np.array(rows[1:], dtype=float)]
    data = np.stack(tables)
    out = open(a.out, "w", newline="") if a.out else sys.stdout
    w = csv.writer(out)
    w.writerow(header + ["max_abs_error", "miss_rate_ours"])
    mean = data.mean(axis=0)
    worst = data[:, :, -1].max(axis=0)
    miss = (data[:, :, -1] > data[:, :, 1]).mean(axis=0)
    for row, wmax, m in zip(mean, worst, miss):
        w.writerow(["%.12g" % x for x in row] + ["%.12g" % wmax, "%.4g" % m])


if __name__ == "__main__":
    main()
