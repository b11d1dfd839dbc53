"""Random maps that satisfy the coefficient sufficient condition.

Magnitudes are drawn so that sum n(n+alpha-1)(|a_n|+|b_n|) equals a uniform
fraction of beta, which makes every sample a class member and lets
necessary-condition properties be checked in bulk.
"""

from __future__ import annotations

import numpy as np

from .params import ClassParams
from .series import AnalyticSeries, HarmonicMap
from .specfun import HypergeometricParams


def random_params(rng: np.random.Generator, alpha_range=(-0.95, 5.0), ctc: bool = True) -> ClassParams:
    """Draw (alpha, beta); with ``ctc`` beta stays in (0, 1 + alpha]."""
    alpha = float(rng.uniform(*alpha_range))
    top = 1.0 + alpha if ctc else 3.0 * (1.0 + alpha)
    beta = float(top * (1.0 - rng.uniform(0.0, 1.0)))  # in (0, top]
    return ClassParams(alpha, beta)


def random_member(rng: np.random.Generator, p: ClassParams, max_degree: int = 12,
                  fill: float | None = None) -> HarmonicMap:
    degree = int(rng.integers(2, max_degree + 1))
    fill = float(rng.uniform(0.0, 1.0)) if fill is None else fill
    slots = 2 * (degree - 1)
    share = rng.dirichlet(np.ones(slots))
    keep = rng.uniform(size=slots) < 0.75
    if not keep.any():
        keep[int(rng.integers(slots))] = True
    share = np.where(keep, share, 0.0)
    share = share / share.sum()
    n = np.concatenate([np.arange(2, degree + 1)] * 2).astype(float)
    mags = fill * p.beta * share / (n * (n + p.alpha - 1.0))
    phases = np.exp(2j * np.pi * rng.uniform(size=slots))
    vals = mags * phases
    h = np.zeros(degree + 1, dtype=complex)
    g = np.zeros(degree + 1, dtype=complex)
    h[1] = 1.0
    h[2:] = vals[: degree - 1]
    g[2:] = vals[degree - 1:]
    return HarmonicMap(AnalyticSeries(h), AnalyticSeries(g))


def random_hyper_params(rng: np.random.Generator, kind: str, min_excess: float = 0.5,
                        max_excess: float = 6.0) -> HypergeometricParams:
    """Parameters valid for condition ``kind`` whose series have nonnegative terms.

    Either a, b > 0, or a = b < 0 (then (a)_n (b)_n is a square).
    """
    while True:
        if rng.uniform() < 0.7:
            a, b = (float(v) for v in rng.uniform(0.05, 3.0, size=2))
        else:
            a = b = -float(rng.uniform(0.05, 2.95))
        if kind == "c" and (a == 1.0 or b == 1.0):
            continue
        offset = 2.0 if kind in ("a", "b") else 1.0
        c = a + b + offset + float(rng.uniform(min_excess, max_excess))
        if c <= 0 or c == 1.0:
            continue
        return HypergeometricParams(a, b, c)
