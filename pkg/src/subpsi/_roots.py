"""Vectorized bisection for monotone increasing functions on [0, cap)."""
import numpy as np

from .errors import ConvergenceError

MAX_ITER = 200


def increasing_root(fn, target, cap=np.inf, rtol=1e-14, max_iter=MAX_ITER):
    """Solve fn(x) = target for x >= 0, fn increasing with fn(0) <= target.

    The bracket starts at [0, 1] and doubles until it straddles the target.
    With a finite cap the upper end is clamped just below it, which is fine
    whenever fn blows up at the cap.
    """
    target = np.asarray(target, dtype=float)
    lo = np.zeros_like(target)
    top = cap * (1.0 - 1e-12) if np.isfinite(cap) else np.inf
    hi = np.minimum(np.ones_like(target), top)

    for _ in range(max_iter):
        short = fn(hi) < target
        if not short.any():
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, np.minimum(2.0 * hi, top), hi)
    else:
        raise ConvergenceError("could not bracket root")

    for _ in range(max_iter):
        done = (hi - lo <= rtol * hi) | (target <= 0)
        if np.all(done):
            break
        mid = 0.5 * (lo + hi)
        below = fn(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    else:
        # bisection halves the width every step, so this only trips on nan input
        raise ConvergenceError("bisection did not converge")
    return np.where(target <= 0, 0.0, 0.5 * (lo + hi))
