"""Hypergeometric members of the class, their polynomial cases and convolution.

The three families all have h(z) = z and a co-analytic part built from
F = 2F1(a, b; c; z):

    hyper_f1:  g = z^2 F(z)
    hyper_f2:  g = z (F(z) - 1)
    hyper_f3:  g = z * integral_0^z F(t) dt

With a = b = -m the series terminate and give the polynomial kinds.  The
polynomial coefficients are computed from the binomial form, independently
of the hypergeometric recurrence, so the two routes can be compared exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .membership import Certificate, coefficient_margin, coefficient_weights
from .params import ClassParams
from .series import AnalyticSeries, GridSpec, HarmonicMap, _check_unimodular, evaluate, hadamard
from .specfun import (
    HypergeometricParams,
    check_lemma_preconditions,
    f21_coefficients,
    f21_exact_terms,
    gauss_value,
    lemma_closed_form,
    pochhammer,
)

HYPER_KINDS = ("hyper_f1", "hyper_f2", "hyper_f3")
POLY_KINDS = ("poly_F1", "poly_F2", "poly_F3")
CONDITION_FOR_KIND = {"hyper_f1": "a", "hyper_f2": "b", "hyper_f3": "c",
                      "poly_F1": "a", "poly_F2": "b", "poly_F3": "c"}
FAMILY_FOR_CONDITION = {"a": "hyper_f1", "b": "hyper_f2", "c": "hyper_f3"}
CATALOG = ("half_plane", "log_map")

MAX_DEGREE = 512
TAIL_CUTOFF = 1e-14
CONDITION_FORMS = ("corrected", "printed")


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    params: HypergeometricParams | None = None
    m: int | None = None
    c: float | None = None
    class_params: ClassParams | None = None
    truncation: int | None = None

    def __post_init__(self):
        if self.kind in HYPER_KINDS:
            if self.params is None:
                raise DomainError(f"{self.kind} needs hypergeometric parameters")
        elif self.kind in POLY_KINDS:
            if self.m is None or int(self.m) != self.m or self.m < 1:
                raise DomainError("polynomial kinds need a positive integer m")
            if self.c is None or not self.c > 0:
                raise DomainError("polynomial kinds need c > 0")
            object.__setattr__(self, "m", int(self.m))
            object.__setattr__(self, "c", float(self.c))
        else:
            raise DomainError(f"unknown construction kind {self.kind!r}")
        if self.truncation is not None and self.truncation < 1:
            raise DomainError("truncation must be >= 1")

    @property
    def hyper_params(self) -> HypergeometricParams:
        """Parameters of the underlying 2F1 (a = b = -m for polynomial kinds)."""
        if self.kind in POLY_KINDS:
            return HypergeometricParams(-self.m, -self.m, self.c)
        return self.params

    @property
    def family(self) -> str:
        return FAMILY_FOR_CONDITION[CONDITION_FOR_KIND[self.kind]]

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in POLY_KINDS:
            out.update(m=self.m, c=self.c)
        else:
            out["params"] = self.params.to_dict()
        if self.class_params is not None:
            out["class_params"] = self.class_params.to_dict()
        out["truncation"] = self.truncation
        return out


def _shift(family: str) -> int:
    return 1 if family == "hyper_f2" else 2


def _exact_g(family: str, terms: list[Fraction]) -> dict[int, Fraction]:
    shift = _shift(family)
    out = {}
    for k, t in enumerate(terms):
        if family == "hyper_f2" and k == 0:
            continue  # z (F - 1) drops the constant term
        out[k + shift] = t / (k + 1) if family == "hyper_f3" else t
    return out


def binomial_weights(m: int, c: float) -> list[Fraction]:
    """C(m, n) (m-n+1)_n / (c)_n for n = 0..m, exactly."""
    cf = Fraction(c)
    out = []
    for n in range(m + 1):
        rising = Fraction(1)
        for j in range(n):
            rising *= (m - n + 1 + j)
        cpoch = Fraction(1)
        for j in range(n):
            cpoch *= cf + j
        out.append(Fraction(math.comb(m, n)) * rising / cpoch)
    return out


def _map_from_exact(g: dict[int, Fraction], truncation: int | None) -> HarmonicMap:
    needed = max([1, *g.keys()])
    degree = max(needed, truncation or 0)
    coeffs = np.zeros(degree + 1)
    for n, v in g.items():
        if n <= degree:
            coeffs[n] = float(v)
    return HarmonicMap(AnalyticSeries.identity(degree), AnalyticSeries(coeffs))


def _adaptive_degree(weighted: np.ndarray, beta: float) -> int:
    for n in range(2, weighted.size):
        if n > 8 and np.all(weighted[n - 3:n + 1] < TAIL_CUTOFF * beta):
            return n
    return weighted.size - 1


def _decay_exponent(family: str, p: HypergeometricParams) -> float:
    # n^2 |g_n| ~ n^(a+b-c+1) for f1, f2 and n^(a+b-c) for f3
    return p.excess - 1.0 if family != "hyper_f3" else p.excess


def build_with_tail(spec: ConstructionSpec) -> tuple[HarmonicMap, float]:
    """The map plus an estimate of the dropped part of sum n(n+alpha-1)|g_n|."""
    family = spec.family
    hp = spec.hyper_params
    if spec.kind in POLY_KINDS:
        w = binomial_weights(spec.m, spec.c)
        return _map_from_exact(_exact_g(family, w), spec.truncation), 0.0
    m = hp.terminating_degree()
    if m is not None:
        return _map_from_exact(_exact_g(family, f21_exact_terms(hp, m)), spec.truncation), 0.0
    shift = _shift(family)
    top = spec.truncation if spec.truncation is not None else MAX_DEGREE
    t = f21_coefficients(hp, top)
    g = np.zeros(top + 1)
    g[shift:] = t[: top + 1 - shift]
    if family == "hyper_f2":
        g[1] = 0.0
    if family == "hyper_f3":
        g[2:] = g[2:] / np.arange(1, top)
    alpha = spec.class_params.alpha if spec.class_params else 0.0
    beta = spec.class_params.beta if spec.class_params else 1.0
    weighted = coefficient_weights(top, alpha) * np.abs(g)
    degree = top if spec.truncation is not None else _adaptive_degree(weighted, beta)
    g = g[: degree + 1]
    s = _decay_exponent(family, hp)
    last = float(weighted[degree])
    tail = last * degree / (s - 1.0) if s > 1.0 else math.inf
    return HarmonicMap(AnalyticSeries.identity(degree), AnalyticSeries(g)), tail


def build(spec: ConstructionSpec) -> HarmonicMap:
    return build_with_tail(spec)[0]


@dataclass(frozen=True)
class ConditionReport:
    kind: str
    margin: float
    coefficient_margin_crosscheck: float
    gauss_value: float
    lhs: float
    rhs: float
    form: str = "corrected"
    printed_margin: float | None = None
    truncation_degree: int = 0
    dropped_tail_estimate: float = 0.0
    coefficients_nonnegative: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "margin": self.margin,
            "coefficient_margin_crosscheck": self.coefficient_margin_crosscheck,
            "gauss_value": self.gauss_value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "form": self.form,
            "printed_margin": self.printed_margin,
            "truncation_degree": self.truncation_degree,
            "dropped_tail_estimate": self.dropped_tail_estimate,
            "coefficients_nonnegative": self.coefficients_nonnegative,
            "notes": list(self.notes),
        }


def _check_condition_preconditions(kind: str, p: HypergeometricParams, cp: ClassParams) -> None:
    if kind in ("a", "b"):
        if p.c <= 0:
            raise DomainError("c must be positive")
        if not p.c > p.a + p.b + 2:
            raise DomainError(f"condition {kind} needs c > a + b + 2")
        if kind == "b" and not cp.beta > cp.alpha:
            raise DomainError("condition b needs beta > alpha")
    elif kind == "c":
        check_lemma_preconditions("c", p)
    else:
        raise DomainError(f"unknown condition kind {kind!r}")


def condition_margin(kind: str, p: HypergeometricParams, cp: ClassParams, form: str = "corrected",
                     spec: ConstructionSpec | None = None) -> ConditionReport:
    """Sufficient condition for the hypergeometric family ``kind`` (a, b or c).

    ``form`` only matters for condition b: the printed right-hand side
    (beta - alpha)/Lambda does not follow from the coefficient sum, which
    equals Lambda * lhs - alpha; "corrected" uses (beta + alpha)/Lambda.
    """
    if form not in CONDITION_FORMS:
        raise DomainError(f"unknown form {form!r}")
    _check_condition_preconditions(kind, p, cp)
    a, b, c = p.a, p.b, p.c
    alpha, beta = cp.alpha, cp.beta
    lam = gauss_value(p)
    q = c - a - b - 1.0
    notes = []
    printed = None
    if kind == "a":
        lhs = pochhammer(a, 2) * pochhammer(b, 2) / ((q - 1.0) * q) + a * b * (alpha + 4.0) / q + 2.0 * (1.0 + alpha)
        rhs = beta / lam
    elif kind == "b":
        lhs = a * b * (a * b + c - 1.0) / ((q - 1.0) * q) + a * b * (1.0 + alpha) / q + alpha
        printed_rhs = (beta - alpha) / lam
        printed = printed_rhs - lhs
        rhs = (beta + alpha) / lam if form == "corrected" else printed_rhs
    else:
        lhs = (lemma_closed_form("a", p) + (1.0 + alpha) * lam
               + alpha * lemma_closed_form("c", p))
        rhs = beta
        ab1 = (a - 1.0) * (b - 1.0)
        printed_lhs = lam * (a * b / q + alpha / (ab1 * q) + alpha) - alpha * (c - 1.0) / ab1
        printed = beta - printed_lhs
        notes.append("lhs assembled from the closed-form weighted sums")
    if spec is None:
        spec = ConstructionSpec(FAMILY_FOR_CONDITION[kind], params=p, class_params=cp)
    f, tail = build_with_tail(spec)
    cross = coefficient_margin(f, cp).margin
    coeffs = f.g.coeffs.real
    nonneg = bool(np.all(coeffs >= 0))
    if not nonneg:
        notes.append("negative coefficients: the condition does not bound sum |g_n|")
    return ConditionReport(kind, rhs - lhs, cross, lam, lhs, rhs, form, printed, f.degree, tail, nonneg, tuple(notes))


def condition_for_spec(spec: ConstructionSpec, form: str = "corrected") -> ConditionReport:
    if spec.class_params is None:
        raise DomainError("class parameters are required for a condition report")
    kind = CONDITION_FOR_KIND[spec.kind]
    return condition_margin(kind, spec.hyper_params, spec.class_params, form, spec)


def convex_catalog(name: str, degree: int = 64) -> AnalyticSeries:
    """Truncations of z/(1-z) ("half_plane") and -log(1-z) ("log_map")."""
    if degree < 2:
        raise DomainError("catalog truncation must be >= 2")
    n = np.arange(degree + 1, dtype=float)
    if name == "half_plane":
        c = np.ones(degree + 1)
    elif name == "log_map":
        c = np.zeros(degree + 1)
        c[1:] = 1.0 / n[1:]
    else:
        raise DomainError(f"unknown catalog entry {name!r}")
    c[0] = 0.0
    return AnalyticSeries(c)


def convolution_transform(f: HarmonicMap, phi: AnalyticSeries, lam: complex) -> HarmonicMap:
    """f * (phi + lam conj(phi)) = h*phi + conj(conj(lam) (g*phi))."""
    lam = _check_unimodular(lam)
    h = hadamard(f.h, phi)
    g = hadamard(f.g, phi) * lam.conjugate()
    return HarmonicMap(h, g)


def herglotz_check(phi: AnalyticSeries, grid: GridSpec | None = None) -> Certificate:
    """min over the grid of Re(phi(z)/z) - 1/2."""
    if phi.degree < 1 or phi[0] != 0 or phi[1] != 1:
        raise DomainError("phi must satisfy phi(0) = 0 and phi'(0) = 1")
    grid = grid or GridSpec.default()
    quotient = AnalyticSeries(phi.coeffs[1:])
    re = evaluate(quotient, grid.points()).real
    return Certificate("herglotz", float(np.min(re)) - 0.5, 0.0, grid, strict=True,
                       details={"truncation_degree": phi.degree})

