"""Membership certificates for the harmonic class B_H^0(alpha, beta).

A map f = h + conj(g) belongs to the class when

    |z h'' + alpha (h' - 1)| + |z g'' + alpha g'| <= beta   on the unit disk.

Two independent routes are offered: the coefficient sufficient condition
(sum of n(n+alpha-1)(|a_n|+|b_n|) at most beta) and sampling the defect on a
grid of concentric circles.  The lambda sweep checks the equivalent
statement that every analytic slice h + lambda g satisfies the analytic
inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import ClassParams
from .series import (
    AnalyticSeries,
    GridSpec,
    HarmonicMap,
    class_operator,
    differentiate,
    eval_harmonic,
    evaluate,
)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_LAMBDA_COUNT = 256

METHODS = ("coefficient_sum", "grid_sup", "lambda_sweep", "derivative_bound",
           "sense_preserving", "injectivity", "lipschitz", "herglotz")


@dataclass(frozen=True)
class Certificate:
    method: str
    margin: float
    tolerance: float = DEFAULT_TOLERANCE
    grid: GridSpec | None = None
    strict: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        # strict certificates need a positive margin (e.g. Jacobian > 0)
        if self.strict:
            return self.margin > self.tolerance
        return self.margin >= -self.tolerance

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "margin": self.margin,
            "passed": self.passed,
            "grid": self.grid.to_dict() if self.grid is not None else None,
            "tolerance": self.tolerance,
        }
        if self.strict:
            out["strict"] = True
        if self.details:
            out["details"] = dict(self.details)
        return out


def _grid_details(grid: GridSpec, f: HarmonicMap) -> dict:
    return {"max_radius": grid.max_radius, "truncation_degree": f.degree}


def coefficient_weights(degree: int, alpha: float) -> np.ndarray:
    """n(n + alpha - 1) for n = 0..degree (entries 0 and 1 unused)."""
    n = np.arange(degree + 1, dtype=float)
    return n * (n + alpha - 1.0)


def coefficient_sum(f: HarmonicMap, alpha: float) -> float:
    w = coefficient_weights(f.degree, alpha)[2:]
    terms = w * (np.abs(f.h.coeffs[2:]) + np.abs(f.g.coeffs[2:]))
    return math.fsum(terms.tolist())


def coefficient_margin(f: HarmonicMap, p: ClassParams, tolerance: float = DEFAULT_TOLERANCE) -> Certificate:
    if not f.in_h0:
        raise DomainError("coefficient condition needs g'(0) = 0")
    total = coefficient_sum(f, p.alpha)
    return Certificate("coefficient_sum", p.beta - total, tolerance,
                       details={"coefficient_sum": total, "truncation_degree": f.degree})


def _operator_values(f: HarmonicMap, alpha: float, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = evaluate(class_operator(f.h, alpha, True), pts)
    b = evaluate(class_operator(f.g, alpha, False), pts)
    return a, b


def grid_sup_certificate(f: HarmonicMap, p: ClassParams, grid: GridSpec | None = None,
                         tolerance: float = DEFAULT_TOLERANCE) -> Certificate:
    grid = grid or GridSpec.default()
    pts = grid.points()
    a, b = _operator_values(f, p.alpha, pts)
    d = np.abs(a) + np.abs(b)
    k = int(np.argmax(d))
    details = _grid_details(grid, f)
    details["sup_defect"] = float(d[k])
    details["argmax"] = [float(pts[k].real), float(pts[k].imag)]
    return Certificate("grid_sup", p.beta - float(d[k]), tolerance, grid, details=details)


def unit_lambdas(count: int) -> np.ndarray:
    k = np.arange(count)
    lam = np.exp(2j * np.pi * k / count)
    # exact values at the quarter turns keep lambda = +-1, +-i free of rounding
    quarter = (4 * k) % count == 0
    lam[quarter] = np.array([1, 1j, -1, -1j])[(4 * k[quarter]) // count % 4]
    return lam


def lambda_sweep(f: HarmonicMap, p: ClassParams, grid: GridSpec | None = None,
                 lambda_count: int = DEFAULT_LAMBDA_COUNT,
                 tolerance: float = DEFAULT_TOLERANCE) -> Certificate:
    if lambda_count < 4:
        raise DomainError("lambda_count must be at least 4")
    grid = grid or GridSpec.default()
    a, b = _operator_values(f, p.alpha, grid.points())
    worst = 0.0
    for lam in unit_lambdas(lambda_count):
        worst = max(worst, float(np.max(np.abs(a + lam * b))))
    details = _grid_details(grid, f)
    details.update(lambda_count=lambda_count, sup_slice_defect=worst)
    return Certificate("lambda_sweep", p.beta - worst, tolerance, grid, details=details)


def _first_derivative(s: AnalyticSeries) -> AnalyticSeries:
    return differentiate(s, 1) if s.degree >= 1 else AnalyticSeries([0.0])


def derivative_bound_check(f: HarmonicMap, p: ClassParams, grid: GridSpec | None = None,
                           lambda_count: int = DEFAULT_LAMBDA_COUNT,
                           tolerance: float = DEFAULT_TOLERANCE) -> Certificate:
    """min of (beta/(1+alpha))|z| - |F_lambda'(z) - 1| over grid and lambda samples."""
    grid = grid or GridSpec.default()
    pts = grid.points()
    dh = evaluate(_first_derivative(f.h), pts) - 1.0
    dg = evaluate(_first_derivative(f.g), pts)
    bound = p.beta / (1.0 + p.alpha) * np.abs(pts)
    worst = math.inf
    for lam in unit_lambdas(lambda_count):
        worst = min(worst, float(np.min(bound - np.abs(dh + lam * dg))))
    details = _grid_details(grid, f)
    details["lambda_count"] = lambda_count
    return Certificate("derivative_bound", worst, tolerance, grid, details=details)


def sense_preserving_certificate(f: HarmonicMap, grid: GridSpec | None = None) -> Certificate:
    grid = grid or GridSpec.default()
    pts = grid.points()
    dh = evaluate(_first_derivative(f.h), pts)
    dg = evaluate(_first_derivative(f.g), pts)
    jac = np.abs(dh) ** 2 - np.abs(dg) ** 2
    return Certificate("sense_preserving", float(np.min(jac)), 0.0, grid, strict=True,
                       details=_grid_details(grid, f))


def pairwise_min(values: np.ndarray, pts: np.ndarray, kind: str) -> float:
    """Minimum over distinct pairs, rows processed in index order."""
    best = math.inf
    for i in range(pts.size - 1):
        dz = np.abs(pts[i + 1:] - pts[i])
        dv = np.abs(values[i + 1:] - values[i])
        if kind == "ratio":
            cur = float(np.min(dv / dz))
        else:
            cur = float(np.min(2.0 * dz - dv))
        if cur < best:
            best = cur
    return best


def injectivity_scan(f: HarmonicMap, grid: GridSpec | None = None) -> Certificate:
    """Smallest difference quotient |f(z1) - f(z2)| / |z1 - z2| over a coarse grid.

    A positive value falsifies nothing; it is a proxy, not a univalence proof.
    """
    grid = (grid or GridSpec.default()).coarse()
    pts = grid.points()
    values = eval_harmonic(f, pts)
    margin = pairwise_min(values, pts, "ratio")
    return Certificate("injectivity", margin, 0.0, grid, strict=True,
                       details={"pairs": pts.size * (pts.size - 1) // 2})
