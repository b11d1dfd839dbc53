"""Pochhammer symbols, the Gauss hypergeometric series and its value at z = 1.

Closed forms go through log-gamma; the independent oracle is the series
itself.  The oracle sums terms directly and, when the series converges too
slowly for direct summation (terms decay like n^(a+b-c-1)), extrapolates the
partial sums using their known asymptotic shape

    S_N = S + N^(1 - s) (d_0 + d_1/N + d_2/N^2 + ...)

where s is the decay exponent of the (weighted) terms.  Only the exponent,
which follows from a, b, c, enters; no gamma values are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import DivergenceError, DomainError
from .series import AnalyticSeries, evaluate

TERM_CUTOFF = 1e-16
RICHARDSON_ORDER = 6
SLOW_GAP = 0.1


def _is_nonpos_int(x: float) -> bool:
    return float(x).is_integer() and x <= 0


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x (x+1) ... (x+n-1), by direct product."""
    if int(n) != n or n < 0:
        raise DomainError("Pochhammer index must be a nonnegative integer")
    out = 1.0
    for k in range(int(n)):
        out *= x + k
    return out


def ln_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError("ln_gamma is only provided for positive arguments")
    return math.lgamma(x)


@dataclass(frozen=True)
class HypergeometricParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if _is_nonpos_int(self.c):
            raise DomainError("c must not be zero or a negative integer")

    @property
    def excess(self) -> float:
        """c - a - b, which governs convergence at z = 1."""
        return self.c - self.a - self.b

    def terminating_degree(self) -> int | None:
        """m when a or b equals -m (the series is then a degree-m polynomial)."""
        ms = [int(-v) for v in (self.a, self.b) if _is_nonpos_int(v)]
        return min(ms) if ms else None

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


def f21_exact_terms(p: HypergeometricParams, m: int) -> list[Fraction]:
    a, b, c = Fraction(p.a), Fraction(p.b), Fraction(p.c)
    t = Fraction(1)
    out = [t]
    for n in range(m):
        t = t * (a + n) * (b + n) / ((c + n) * (n + 1))
        out.append(t)
    return out


def f21_coefficients(p: HypergeometricParams, degree: int) -> np.ndarray:
    """(a)_n (b)_n / ((c)_n n!) for n = 0..degree.

    Terminating series are computed exactly in rational arithmetic and then
    rounded, so equal rationals always give equal floats.
    """
    out = np.zeros(degree + 1)
    m = p.terminating_degree()
    if m is not None:
        exact = f21_exact_terms(p, min(m, degree))
        out[: len(exact)] = [float(t) for t in exact]
        return out
    t = 1.0
    out[0] = t
    for n in range(degree):
        t = t * (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1))
        out[n + 1] = t
    return out


def f21_truncated(p: HypergeometricParams, z: complex, degree: int) -> complex:
    if abs(z) > 1.0 + 1e-12:
        raise DomainError("|z| must not exceed 1")
    if abs(z) >= 1.0 - 1e-15 and p.terminating_degree() is None and p.excess <= 0:
        raise DivergenceError("series diverges on |z| = 1 unless c - a - b > 0")
    return complex(evaluate(AnalyticSeries(f21_coefficients(p, degree)), z))


@dataclass(frozen=True)
class SeriesSum:
    value: float
    terms_used: int
    accelerated: bool


def _richardson(partial: list[float], checkpoints: list[int], exponent: float) -> float:
    with mpmath.workdps(30):
        rows = [[1] + [mpmath.mpf(n) ** (1 - exponent - k) for k in range(RICHARDSON_ORDER + 1)]
                for n in checkpoints]
        sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(partial))
        return float(sol[0])


def series_sum_at_one(p: HypergeometricParams, weight_power: int = 0) -> SeriesSum:
    """Sum of (n+1)^weight_power (a)_n (b)_n / ((c)_n n!) over n >= 0, from the series alone."""
    m = p.terminating_degree()
    if m is not None:
        exact = f21_exact_terms(p, m)
        total = sum((t * Fraction(n + 1) ** weight_power for n, t in enumerate(exact)), Fraction(0))
        return SeriesSum(float(total), m + 1, False)
    exponent = p.excess + 1.0 - weight_power
    if exponent <= 1.0:
        raise DivergenceError("weighted series diverges at z = 1")
    a, b, c = p.a, p.b, p.c
    step = 100 + 10 * math.ceil(abs(a) + abs(b) + abs(c))
    checkpoints = [step * (j + 1) for j in range(RICHARDSON_ORDER + 2)]
    settle = max(abs(a), abs(b), abs(c)) + 2.0
    t, s, comp = 1.0, 0.0, 0.0
    partial: list[float] = []
    quiet = 0
    for n in range(checkpoints[-1]):
        term = t * float(n + 1) ** weight_power
        y = term - comp
        nxt = s + y
        comp = (nxt - s) - y
        s = nxt
        if n + 1 == checkpoints[len(partial)]:
            partial.append(s)
        if n > settle and abs(term) < TERM_CUTOFF * max(1.0, abs(s)):
            quiet += 1
            if quiet >= 3:
                return SeriesSum(s, n + 1, False)
        else:
            quiet = 0
        t = t * (a + n) * (b + n) / ((c + n) * (n + 1))
    return SeriesSum(_richardson(partial, checkpoints, exponent), checkpoints[-1], True)


def gauss_value(p: HypergeometricParams) -> float:
    """2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))."""
    if p.terminating_degree() is not None:
        return series_sum_at_one(p).value
    if p.excess <= 0:
        raise DivergenceError("2F1(a,b;c;1) diverges for c - a - b <= 0")
    if p.c <= 0:
        raise DomainError("c must be positive")
    if p.c - p.a > 0 and p.c - p.b > 0:
        return math.exp(ln_gamma(p.c) + ln_gamma(p.excess) - ln_gamma(p.c - p.a) - ln_gamma(p.c - p.b))
    return series_sum_at_one(p).value


LEMMA_KINDS = ("a", "b", "c")
_LEMMA_WEIGHT = {"a": 1, "b": 2, "c": -1}


@dataclass(frozen=True)
class IdentityCheck:
    kind: str
    closed_form: float
    oracle_value: float
    terms_used: int
    accelerated: bool = False
    slow_convergence: bool = False
    literal_closed_form: float | None = None

    @property
    def abs_gap(self) -> float:
        return abs(self.closed_form - self.oracle_value)

    @property
    def rel_gap(self) -> float:
        return self.abs_gap / max(abs(self.oracle_value), 1e-300)

    @property
    def literal_gap(self) -> float | None:
        if self.literal_closed_form is None:
            return None
        return abs(self.literal_closed_form - self.oracle_value)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "closed_form": self.closed_form,
            "oracle_value": self.oracle_value,
            "abs_gap": self.abs_gap,
            "terms_used": self.terms_used,
            "accelerated": self.accelerated,
            "slow_convergence": self.slow_convergence,
        }
        if self.literal_closed_form is not None and self.literal_closed_form != self.closed_form:
            out["literal_closed_form"] = self.literal_closed_form
            out["literal_gap"] = self.literal_gap
        return out


def check_lemma_preconditions(kind: str, p: HypergeometricParams) -> None:
    if kind not in LEMMA_KINDS:
        raise DomainError(f"unknown lemma kind {kind!r}")
    if p.c <= 0:
        raise DomainError("c must be positive")
    if kind == "a" and not p.c > p.a + p.b + 1:
        raise DomainError("kind a needs c > a + b + 1")
    if kind == "b" and not p.c > p.a + p.b + 2:
        raise DomainError("kind b needs c > a + b + 2")
    if kind == "c":
        if p.a == 1 or p.b == 1 or p.c == 1:
            raise DomainError("kind c needs a, b, c != 1")
        if not p.c > max(0.0, p.a + p.b + 1):
            raise DomainError("kind c needs c > max(0, a + b + 1)")


def lemma_closed_form(kind: str, p: HypergeometricParams, literal: bool = False) -> float:
    """Closed form of the weighted sums with weights (n+1), (n+1)^2 or 1/(n+1).

    For the 1/(n+1) sum the default uses Gamma(c-a-b+1); ``literal`` switches
    to the Gamma(c-a-b-1) form as printed, which disagrees with the series.
    """
    check_lemma_preconditions(kind, p)
    a, b, c = p.a, p.b, p.c
    lam = gauss_value(p)
    q = c - a - b - 1.0
    if kind == "a":
        return lam * (a * b + q) / q
    if kind == "b":
        return lam * (pochhammer(a, 2) * pochhammer(b, 2) / ((q - 1.0) * q) + 3.0 * a * b / q + 1.0)
    scale = (c - a - b) * lam if not literal else lam / q
    return (scale - (c - 1.0)) / ((a - 1.0) * (b - 1.0))


def lemma_sum(kind: str, p: HypergeometricParams) -> IdentityCheck:
    closed = lemma_closed_form(kind, p)
    oracle = series_sum_at_one(p, _LEMMA_WEIGHT[kind])
    literal = lemma_closed_form(kind, p, literal=True) if kind == "c" else None
    slow = p.excess + 1.0 - _LEMMA_WEIGHT[kind] - 1.0 < SLOW_GAP
    return IdentityCheck(kind, closed, oracle.value, oracle.terms_used, oracle.accelerated, slow, literal)
