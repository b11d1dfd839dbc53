"""Sharp coefficient and growth bounds, extremal maps, Lipschitz and length checks."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .membership import Certificate, pairwise_min
from .params import BOUNDARY_TOL, ClassParams
from .series import AnalyticSeries, GridSpec, HarmonicMap, eval_harmonic

EXTREMAL_KINDS = ("coeff_analytic", "coeff_coanalytic", "growth_analytic", "growth_coanalytic", "theta")


def coeff_bound(n: int, p: ClassParams) -> float:
    """beta / (n (n + alpha - 1)), the sharp bound on |a_n| and |b_n|."""
    if int(n) != n or n < 2:
        raise DomainError("coefficient index must be an integer >= 2")
    return p.beta / (n * (n + p.alpha - 1.0))


@dataclass(frozen=True)
class GrowthEnvelope:
    r: float
    lower: float
    upper: float

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


def growth_envelope(r: float, p: ClassParams) -> GrowthEnvelope:
    if not 0.0 <= r < 1.0:
        raise DomainError("radius must lie in [0, 1)")
    if p.beta > 1.0 + p.alpha + BOUNDARY_TOL:
        raise DomainError("growth bound needs beta <= 1 + alpha")
    k = p.beta / (2.0 * (1.0 + p.alpha))
    # nested form matches Horner evaluation of the extremal r + k r^2 bit for bit
    return GrowthEnvelope(r, (1.0 - k * r) * r, (k * r + 1.0) * r)


def envelope_csv(p: ClassParams, radii: Sequence[float]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "lower", "upper"])
    for r in radii:
        env = growth_envelope(r, p)
        writer.writerow([repr(env.r), repr(env.lower), repr(env.upper)])
    return buf.getvalue()


def make_extremal(kind: str, n: int, p: ClassParams) -> HarmonicMap:
    if kind not in EXTREMAL_KINDS:
        raise DomainError(f"unknown extremal kind {kind!r}")
    if kind.startswith("coeff"):
        c = coeff_bound(n, p)
        part = AnalyticSeries.monomial(n, c)
        ident = AnalyticSeries.identity(n)
        if kind == "coeff_analytic":
            return HarmonicMap(ident + part, AnalyticSeries.zero(n))
        return HarmonicMap(ident, part)
    if kind.startswith("growth"):
        if n not in (None, 2):
            raise DomainError("growth extremals have n = 2")
        c = p.beta / (2.0 * (1.0 + p.alpha))
        part = AnalyticSeries.monomial(2, c)
        if kind == "growth_analytic":
            return HarmonicMap(AnalyticSeries([0, 1, c]), AnalyticSeries.zero(2))
        return HarmonicMap(AnalyticSeries.identity(2), part)
    # beta / (4(1 + alpha)), written through the same weight 2(2 + alpha - 1) that
    # the coefficient sum uses, so the sum reproduces beta to an ulp or two
    w2 = 2.0 * (2.0 + p.alpha - 1.0)
    q = 0.5 * p.beta / w2
    return HarmonicMap(AnalyticSeries([0, 1, q]), AnalyticSeries([0, 0, -q]))


def theta_map(p: ClassParams) -> HarmonicMap:
    return make_extremal("theta", 2, p)


def lipschitz_scan(f: HarmonicMap, grid: GridSpec | None = None,
                   pairs: tuple[np.ndarray, np.ndarray] | None = None) -> Certificate:
    """min of 2|z1 - z2| - |f(z1) - f(z2)| over grid pairs or explicit pairs."""
    if pairs is not None:
        z1, z2 = (np.asarray(v, dtype=complex) for v in pairs)
        dv = np.abs(eval_harmonic(f, z1) - eval_harmonic(f, z2))
        margin = float(np.min(2.0 * np.abs(z1 - z2) - dv))
        return Certificate("lipschitz", margin, details={"pairs": int(z1.size)})
    grid = (grid or GridSpec.default()).coarse(max_radius=1.0)
    pts = grid.points()
    margin = pairwise_min(eval_harmonic(f, pts), pts, "lipschitz")
    return Certificate("lipschitz", margin, grid=grid,
                       details={"pairs": pts.size * (pts.size - 1) // 2})


def boundary_length(f: HarmonicMap, samples: int = 4096) -> float:
    """Polygonal length of theta -> f(e^{i theta}) over a uniform partition.

    Evaluating on |z| = 1 is fine because stored series are polynomials.
    """
    if samples < 64:
        raise DomainError("need at least 64 boundary samples")
    theta = 2.0 * np.pi * np.arange(samples + 1) / samples
    w = eval_harmonic(f, np.exp(1j * theta))
    w[-1] = w[0]
    return math.fsum(np.abs(np.diff(w)).tolist())
