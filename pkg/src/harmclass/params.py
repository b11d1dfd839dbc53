"""Class parameters (alpha, beta) and the parameter-regime thresholds.

The thresholds are taken as given from the analytic class B(alpha, beta):
close-to-convexity for beta <= 1 + alpha, a five-branch convexity bound and
a starlikeness bound.  The first convexity branch as printed, (1-a)/(2+a),
is discontinuous at sqrt(5)-2; the default uses (1+a)/(2+a), which joins the
neighbouring branch and keeps convexity below close-to-convexity.  The starlike bound as printed has a branch that is
discontinuous at alpha = 1; both the printed ("literal") and the
continuity-consistent ("continuous") variants are available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

BOUNDARY_TOL = 1e-12

SQRT5 = math.sqrt(5.0)
# breakpoints of the convexity bound
CONVEX_BREAKPOINTS = (SQRT5 - 2.0, 1.0, 2.0 / (SQRT5 - 1.0), 2.0)

STARLIKE_MODES = ("continuous", "literal")
CONVEX_FORMS = ("corrected", "printed")

_CONVEX_NOTE = (
    "printed first branch (1-a)/(2+a) jumps at a = sqrt5-2 and exceeds 1+a near a = -1; "
    "the corrected branch (1+a)/(2+a) is continuous there and agrees with it at a = 0"
)

_STARLIKE_NOTE = (
    "printed alpha != 1 branch 2(1+a)/(2+a^(2/(1-a))) tends to 4/(2+e^-2) as a -> 1, "
    "not to the printed alpha = 1 value 4e^2/(1+e^2); continuous mode uses 1+ in the denominator"
)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > -1.0 or not math.isfinite(alpha):
        raise DomainError("alpha must be a finite real > -1")
    return alpha


@dataclass(frozen=True)
class ClassParams:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        beta = float(self.beta)
        if not beta > 0.0 or not math.isfinite(beta):
            raise DomainError("beta must be a finite real > 0")
        object.__setattr__(self, "beta", beta)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


def beta_max_close_to_convex(alpha: float) -> float:
    return 1.0 + _check_alpha(alpha)


def beta_max_convex(alpha: float, form: str = "corrected") -> float:
    """Convexity threshold.  ``form="printed"`` keeps the first branch as (1-a)/(2+a)."""
    alpha = _check_alpha(alpha)
    if form not in CONVEX_FORMS:
        raise DomainError(f"unknown convexity form {form!r}")
    b1, b2, b3, b4 = CONVEX_BREAKPOINTS
    if alpha <= b1:
        top = 1.0 - alpha if form == "printed" else 1.0 + alpha
        return top / (2.0 + alpha)
    if alpha <= b2:
        return (1.0 + alpha) / SQRT5
    if alpha <= b3:
        return (1.0 + alpha) / (alpha * SQRT5)
    if alpha <= b4:
        return (1.0 + alpha) / (2.0 + alpha)
    return (1.0 + alpha) / (2.0 * alpha)


def convex_branches(alpha: float, form: str = "corrected") -> tuple[float, ...]:
    """All five branch formulas evaluated at ``alpha`` (for continuity audits)."""
    a = _check_alpha(alpha)
    if form not in CONVEX_FORMS:
        raise DomainError(f"unknown convexity form {form!r}")
    return (
        ((1.0 - a) if form == "printed" else (1.0 + a)) / (2.0 + a),
        (1.0 + a) / SQRT5,
        (1.0 + a) / (a * SQRT5) if a != 0 else math.inf,
        (1.0 + a) / (2.0 + a),
        (1.0 + a) / (2.0 * a) if a != 0 else math.inf,
    )


def beta_max_starlike(alpha: float, mode: str = "continuous") -> float | None:
    """Starlikeness threshold, or None where the formula has no real value."""
    alpha = _check_alpha(alpha)
    if mode not in STARLIKE_MODES:
        raise DomainError(f"unknown starlike mode {mode!r}")
    if alpha <= 0.0:
        return None
    if alpha == 1.0:
        e2 = math.exp(2.0)
        return 4.0 * e2 / (1.0 + e2)
    power = alpha ** (2.0 / (1.0 - alpha))
    offset = 2.0 if mode == "literal" else 1.0
    return 2.0 * (1.0 + alpha) / (offset + power)


@dataclass(frozen=True)
class RegimeReport:
    close_to_convex: bool
    convex: bool
    starlike: bool | None
    thresholds: dict = field(default_factory=dict)
    mode: str = "continuous"
    note: str | None = None
    convex_form: str = "corrected"

    def to_dict(self) -> dict:
        return {
            "close_to_convex": self.close_to_convex,
            "convex": self.convex,
            "starlike": self.starlike,
            "mode": self.mode,
            "convex_form": self.convex_form,
            "threshold": dict(self.thresholds),
            "note": self.note,
        }


def _inside(beta: float, bound: float) -> bool:
    return beta <= bound + BOUNDARY_TOL


def classify(p: ClassParams, mode: str = "continuous", convex_form: str = "corrected") -> RegimeReport:
    ctc = beta_max_close_to_convex(p.alpha)
    cvx = beta_max_convex(p.alpha, convex_form)
    star = beta_max_starlike(p.alpha, mode)
    return RegimeReport(
        close_to_convex=_inside(p.beta, ctc),
        convex=_inside(p.beta, cvx),
        starlike=None if star is None else _inside(p.beta, star),
        thresholds={"close_to_convex": ctc, "convex": cvx, "starlike": star},
        mode=mode,
        note=_note(p.alpha, star, convex_form),
        convex_form=convex_form,
    )


def _note(alpha: float, star: float | None, convex_form: str) -> str | None:
    parts = []
    if star is not None and alpha != 1.0:
        parts.append(_STARLIKE_NOTE)
    if convex_form == "printed" and alpha <= CONVEX_BREAKPOINTS[0]:
        parts.append(_CONVEX_NOTE)
    return "; ".join(parts) or None
