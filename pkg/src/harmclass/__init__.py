"""Numerical toolkit for normalized planar harmonic maps f = h + conj(g) in the
class defined by |z h'' + alpha(h' - 1)| + |z g'' + alpha g'| <= beta.

Submodules: ``series`` (power series and maps), ``params`` (class parameters
and regime thresholds), ``membership`` (certificates), ``bounds`` (sharp bounds
and extremals), ``specfun`` (Gauss hypergeometric tools), ``constructions``
(hypergeometric members and convolution), ``render`` and ``cli``.
"""

from .errors import DivergenceError, DomainError
from .params import ClassParams, classify
from .series import AnalyticSeries, GridSpec, HarmonicMap

__version__ = "0.1.0"
