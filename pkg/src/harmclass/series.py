"""Truncated power series and the harmonic-map data model.

Every series is a polynomial c_0 + c_1 z + ... + c_N z^N with an explicit
truncation degree N.  Operations never extend N silently; binary operations
zero-pad to the larger degree, except the Hadamard product which keeps the
smaller one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

DEFAULT_DEGREE = 64

# points produced as r*exp(i*theta) with r = 1 can overshoot by an ulp or two
_UNIT_SLACK = 1e-12


def _as_points(z) -> np.ndarray:
    return np.asarray(z, dtype=complex)


def _check_closed_disk(z: np.ndarray) -> None:
    if z.size and np.max(np.abs(z)) > 1.0 + _UNIT_SLACK:
        raise DomainError("evaluation point outside the closed unit disk")


def _unwrap(value: np.ndarray, scalar: bool):
    return complex(value) if scalar else value


class AnalyticSeries:
    """Coefficients c_0..c_N of a truncated analytic power series.

    The coefficient array is read-only; every operation returns a new series.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise DomainError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("series coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def identity(cls, degree: int = 1) -> AnalyticSeries:
        if degree < 1:
            raise DomainError("the identity series needs degree >= 1")
        c = np.zeros(degree + 1, dtype=complex)
        c[1] = 1.0
        return cls(c)

    @classmethod
    def zero(cls, degree: int) -> AnalyticSeries:
        return cls(np.zeros(degree + 1, dtype=complex))

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0, degree: int | None = None) -> AnalyticSeries:
        degree = n if degree is None else degree
        if degree < n:
            raise DomainError("degree too small for the requested monomial")
        c = np.zeros(degree + 1, dtype=complex)
        c[n] = coeff
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, n: int) -> complex:
        return complex(self._c[n]) if n < self._c.size else 0j

    def __repr__(self) -> str:
        return f"AnalyticSeries(degree={self.degree}, coeffs={self._c.tolist()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnalyticSeries):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    @property
    def is_normalized(self) -> bool:
        """True for the h-part normalization c_0 = 0, c_1 = 1 (exactly)."""
        return self.degree >= 1 and self._c[0] == 0 and self._c[1] == 1

    def padded(self, degree: int) -> AnalyticSeries:
        if degree < self.degree:
            raise DomainError("padding cannot lower the degree; use truncated()")
        c = np.zeros(degree + 1, dtype=complex)
        c[: self._c.size] = self._c
        return AnalyticSeries(c)

    def truncated(self, degree: int) -> AnalyticSeries:
        if degree < 0:
            raise DomainError("degree must be nonnegative")
        return AnalyticSeries(self._c[: degree + 1]) if degree <= self.degree else self.padded(degree)

    def effective_degree(self) -> int:
        """Index of the highest nonzero coefficient (0 for the zero series)."""
        nz = np.flatnonzero(self._c)
        return int(nz[-1]) if nz.size else 0

    def __add__(self, other: AnalyticSeries) -> AnalyticSeries:
        n = max(self.degree, other.degree)
        return AnalyticSeries(self.padded(n)._c + other.padded(n)._c)

    def __sub__(self, other: AnalyticSeries) -> AnalyticSeries:
        n = max(self.degree, other.degree)
        return AnalyticSeries(self.padded(n)._c - other.padded(n)._c)

    def __mul__(self, scalar: complex) -> AnalyticSeries:
        return AnalyticSeries(self._c * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> AnalyticSeries:
        return AnalyticSeries(-self._c)

    def __call__(self, z):
        return evaluate(self, z)

    def to_json(self) -> list[list[float]]:
        return series_to_json(self)


def evaluate(s: AnalyticSeries, z):
    """Horner evaluation of ``s`` at a point or an array of points in the closed disk."""
    scalar = np.ndim(z) == 0
    pts = _as_points(z)
    _check_closed_disk(pts)
    c = s.coeffs
    # Real and imaginary parts are carried separately so that every product is
    # a plain rounded multiply (no fused multiply-add); multiplying the
    # coefficients by a quarter-turn then rotates the result bit-exactly.
    zr, zi = pts.real, pts.imag
    re = np.full(pts.shape, c[-1].real)
    im = np.full(pts.shape, c[-1].imag)
    for k in range(c.size - 2, -1, -1):
        re, im = re * zr - im * zi + c[k].real, re * zi + im * zr + c[k].imag
    return _unwrap(re + 1j * im, scalar)


def differentiate(s: AnalyticSeries, order: int = 1) -> AnalyticSeries:
    if order not in (1, 2):
        raise DomainError("only first and second derivatives are supported")
    if s.degree < order:
        raise DomainError(f"series of degree {s.degree} has no order-{order} derivative series")
    c = s.coeffs
    n = np.arange(c.size, dtype=float)
    if order == 1:
        return AnalyticSeries(n[1:] * c[1:])
    return AnalyticSeries(n[2:] * (n[2:] - 1) * c[2:])


def hadamard(s1: AnalyticSeries, s2: AnalyticSeries) -> AnalyticSeries:
    """Coefficient-wise product, truncated to the smaller degree."""
    n = min(s1.degree, s2.degree)
    return AnalyticSeries(s1.coeffs[: n + 1] * s2.coeffs[: n + 1])


def class_operator(s: AnalyticSeries, alpha: float, subtract_one: bool) -> AnalyticSeries:
    """Series of z s''(z) + alpha (s'(z) - [subtract_one]).

    The coefficient of z^m is (m+1)(m+alpha) c_{m+1}; the constant term also
    absorbs the -alpha shift used for the analytic part h.
    """
    c = s.coeffs
    if c.size < 2:
        return AnalyticSeries([-alpha if subtract_one else 0.0])
    m = np.arange(c.size - 1, dtype=float)
    k = (m + 1.0) * (m + alpha) * c[1:]
    if subtract_one:
        k = k.copy()
        k[0] = alpha * (c[1] - 1.0)
    return AnalyticSeries(k)


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """f = h + conj(g) with h(0) = 0, h'(0) = 1 and g(0) = 0."""

    h: AnalyticSeries
    g: AnalyticSeries

    def __post_init__(self):
        if self.h.degree != self.g.degree:
            raise DomainError("h and g must share the same truncation degree")
        if not self.h.is_normalized:
            raise DomainError("h must satisfy h(0) = 0 and h'(0) = 1")
        if self.g[0] != 0:
            raise DomainError("g must satisfy g(0) = 0")

    @classmethod
    def from_parts(cls, h: AnalyticSeries | Sequence[complex], g: AnalyticSeries | Sequence[complex] | None = None,
                   degree: int | None = None) -> HarmonicMap:
        """Build a map, zero-padding both parts to a common degree."""
        h = h if isinstance(h, AnalyticSeries) else AnalyticSeries(h)
        if g is None:
            g = AnalyticSeries.zero(h.degree)
        g = g if isinstance(g, AnalyticSeries) else AnalyticSeries(g)
        n = max(h.degree, g.degree, degree or 0)
        return cls(h.padded(n), g.padded(n))

    @classmethod
    def identity(cls, degree: int = 1) -> HarmonicMap:
        return cls(AnalyticSeries.identity(degree), AnalyticSeries.zero(degree))

    @property
    def degree(self) -> int:
        return self.h.degree

    @property
    def in_h0(self) -> bool:
        return self.g[1] == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, HarmonicMap):
            return NotImplemented
        return self.h == other.h and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.h, self.g))

    def __call__(self, z):
        return eval_harmonic(self, z)

    def to_dict(self) -> dict:
        return map_to_json(self)


def eval_harmonic(f: HarmonicMap, z):
    """h(z) + conj(g(z))."""
    scalar = np.ndim(z) == 0
    pts = _as_points(z)
    return _unwrap(evaluate(f.h, pts) + np.conj(evaluate(f.g, pts)), scalar)


def _check_open_disk(z: np.ndarray) -> None:
    if z.size and np.max(np.abs(z)) >= 1.0:
        raise DomainError("point must lie in the open unit disk")


def defect(f: HarmonicMap, alpha: float, z):
    """|z h'' + alpha(h' - 1)| + |z g'' + alpha g'| at z (scalar or array)."""
    scalar = np.ndim(z) == 0
    pts = _as_points(z)
    _check_open_disk(pts)
    a = evaluate(class_operator(f.h, alpha, True), pts)
    b = evaluate(class_operator(f.g, alpha, False), pts)
    out = np.abs(a) + np.abs(b)
    return float(out) if scalar else out


def jacobian(f: HarmonicMap, z):
    """|h'(z)|^2 - |g'(z)|^2."""
    scalar = np.ndim(z) == 0
    pts = _as_points(z)
    _check_open_disk(pts)
    dh = evaluate(_derivative_or_zero(f.h), pts)
    dg = evaluate(_derivative_or_zero(f.g), pts)
    out = np.abs(dh) ** 2 - np.abs(dg) ** 2
    return float(out) if scalar else out


def _derivative_or_zero(s: AnalyticSeries) -> AnalyticSeries:
    return differentiate(s, 1) if s.degree >= 1 else AnalyticSeries([0.0])


def _check_unimodular(lam: complex) -> complex:
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise DomainError("lambda must lie on the unit circle")
    return lam


def analytic_slice(f: HarmonicMap, lam: complex) -> AnalyticSeries:
    """F_lambda = h + lambda g."""
    lam = _check_unimodular(lam)
    return AnalyticSeries(f.h.coeffs + lam * f.g.coeffs)


def convex_combination(fs: Sequence[HarmonicMap], ws: Sequence[float]) -> HarmonicMap:
    if len(fs) == 0 or len(fs) != len(ws):
        raise DomainError("need one weight per map and at least one map")
    w = np.asarray(ws, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise DomainError("weights must be nonnegative and sum to 1")
    degree = fs[0].degree
    if any(f.degree != degree for f in fs):
        raise DomainError("all maps must share the same truncation degree")
    h = np.zeros(degree + 1, dtype=complex)
    g = np.zeros(degree + 1, dtype=complex)
    for wk, f in zip(w, fs):
        h += wk * f.h.coeffs
        g += wk * f.g.coeffs
    # each h_k has c_0 = 0, c_1 = 1 exactly; keep the normalization exact
    h[0], h[1], g[0] = 0.0, 1.0, 0.0
    return HarmonicMap(AnalyticSeries(h), AnalyticSeries(g))


@dataclass(frozen=True)
class GridSpec:
    """Concentric-circle sampling plan of the unit disk."""

    radii: tuple[float, ...]
    angles_per_circle: int = 512
    _points: np.ndarray = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise DomainError("grid needs at least one radius")
        if any(r <= 0 or r >= 1 for r in radii):
            raise DomainError("grid radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("grid radii must be strictly increasing")
        if int(self.angles_per_circle) != self.angles_per_circle or self.angles_per_circle < 8:
            raise DomainError("need at least 8 angles per circle")
        object.__setattr__(self, "angles_per_circle", int(self.angles_per_circle))

    @classmethod
    def default(cls) -> GridSpec:
        return cls(tuple(k / 10 for k in range(1, 10)) + (0.99, 0.999), 512)

    @property
    def max_radius(self) -> float:
        return self.radii[-1]

    def points(self) -> np.ndarray:
        """All sample points, radius-major, starting at angle 0 on each circle."""
        if self._points is None:
            theta = 2.0 * np.pi * np.arange(self.angles_per_circle) / self.angles_per_circle
            ring = np.exp(1j * theta)
            pts = np.concatenate([r * ring for r in self.radii])
            pts.setflags(write=False)
            object.__setattr__(self, "_points", pts)
        return self._points

    def coarse(self, max_radius: float = 0.9, max_angles: int = 64) -> GridSpec:
        """Sub-grid for pairwise scans: radii up to ``max_radius``, fewer angles."""
        radii = tuple(r for r in self.radii if r <= max_radius + 1e-15) or (self.radii[0],)
        m = self.angles_per_circle
        step = max(1, m // max_angles)
        return GridSpec(radii, max(8, m // step))

    def to_dict(self) -> dict:
        return {"radii": list(self.radii), "angles_per_circle": self.angles_per_circle}

    @classmethod
    def from_dict(cls, d: dict) -> GridSpec:
        return cls(tuple(d["radii"]), int(d["angles_per_circle"]))


def series_to_json(s: AnalyticSeries) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in s.coeffs]


def series_from_json(data) -> AnalyticSeries:
    if not isinstance(data, list) or not data:
        raise DomainError("series must be a nonempty JSON array of [re, im] pairs")
    coeffs = []
    for item in data:
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            coeffs.append(complex(item))
            continue
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise DomainError(f"bad coefficient entry {item!r}")
        coeffs.append(complex(item[0], item[1]))
    return AnalyticSeries(coeffs)


def map_to_json(f: HarmonicMap) -> dict:
    return {"h": series_to_json(f.h), "g": series_to_json(f.g)}


def map_from_json(data) -> HarmonicMap:
    if not isinstance(data, dict) or "h" not in data:
        raise DomainError('harmonic map must be a JSON object {"h": [...], "g": [...]}')
    h = series_from_json(data["h"])
    g = series_from_json(data["g"]) if data.get("g") else None
    return HarmonicMap.from_parts(h, g)
