"""
Counter-based SplitMix64 stream.

Draw i of a stream with seed s is mix(s + (i + 1) * GOLDEN) in uint64
arithmetic, so any language with 64-bit wraparound reproduces it exactly.
Uniforms use the top 53 bits, (raw >> 11 + 0.5) / 2^53, which lie strictly
inside (0, 1). Gaussians come from the inverse normal CDF of those uniforms.
"""
import numpy as np
from scipy.special import ndtri

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed, start, n):
    """Raw outputs for counters start .. start + n - 1."""
    idx = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * GOLDEN
        z = (z ^ (z >> np.uint64(30))) * MIX1
        z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


class CounterRNG:
    def __init__(self, seed):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.counter = 0

    def raw(self, n):
        out = splitmix64(self.seed, self.counter, n)
        self.counter += n
        return out

    def _draw(self, shape, fn):
        n = int(np.prod(shape)) if shape != () else 1
        out = fn(self.raw(n))
        return out.reshape(shape) if shape != () else float(out[0])

    def uniform(self, shape=()):
        return self._draw(shape, lambda r: ((r >> np.uint64(11)).astype(float) + 0.5) * 2.0**-53)

    def normal(self, shape=()):
        return ndtri(self.uniform(shape))

    def rademacher(self, shape=()):
        return self._draw(shape, lambda r: np.where(r >> np.uint64(63), 1.0, -1.0))

    def cauchy_magnitude(self, shape=()):
        return np.abs(np.tan(np.pi * (self.uniform(shape) - 0.5)))

    def exponential(self, shape=()):
        return -np.log(self.uniform(shape))
