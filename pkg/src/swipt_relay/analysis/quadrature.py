"""Adaptive quadrature helpers built on QUADPACK (``scipy.integrate.quad``)."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from ..errors import QuadratureError


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive quadrature.

    Parameters
    ----------
    rel_tol, abs_tol : float
        Requested relative and absolute error.
    max_subdivisions : int
        Cap on the number of adaptive subintervals.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureSpec()


def integrate_finite(f, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD, points=None) -> float:
    """Integral of ``f`` over ``[lo, hi]``.

    Raises :class:`QuadratureError` (with the partial value) when QUADPACK
    reports an error estimate above the requested tolerance.
    """
    if hi <= lo:
        return 0.0
    kw = {}
    if points is not None:
        pts = sorted(p for p in points if lo < p < hi)
        if pts:
            kw["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                                  limit=spec.max_subdivisions, **kw)
    tol = max(spec.abs_tol, spec.rel_tol * abs(val))
    if not math.isfinite(val) or err > 50.0 * tol:
        raise QuadratureError(f"quadrature did not converge (error estimate {err:.3g})",
                              estimate=val, achieved=err / abs(val) if val else float("inf"))
    return val


def integrate_to_inf(f, lower: float = 0.0, scale: float = 1.0, spec: QuadratureSpec = DEFAULT_QUAD,
                     breaks=()) -> float:
    """Integral of ``f`` over ``[lower, inf)``.

    The half line is folded onto (0, 1) with ``x = lower + scale*t/(1-t)``, so
    half of the nodes fall within ``scale`` of the lower limit.  ``breaks``
    are optional interior points in x where the integrand changes character.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")

    def g(t):
        if t >= 1.0:
            return 0.0
        om = 1.0 - t
        x = lower + scale * t / om
        v = f(x)
        return v * scale / (om * om) if v else 0.0

    pts = [b / (b + scale) for b in ((x - lower) for x in breaks) if b > 0]
    return integrate_finite(g, 0.0, 1.0, spec, points=pts or None)


def integrate_positive_log(f, lower: float, upper: float = math.inf, spec: QuadratureSpec = DEFAULT_QUAD,
                           decades_per_piece: float = 2.0) -> float:
    """Integral of ``f`` over ``[lower, upper]`` with ``lower > 0`` on a log scale.

    ``x = e^u``; used for integrands whose mass spreads over many decades
    (e.g. stretched-exponential tails of Bessel-K integrands at high SNR).
    The log range is cut into pieces of a few decades each so QUADPACK sees
    every feature.
    """
    if lower <= 0:
        raise ValueError("lower must be positive")
    ulo = math.log(lower)
    if math.isinf(upper):
        raise ValueError("upper must be finite for the log map")
    uhi = math.log(upper)
    step = decades_per_piece * math.log(10.0)
    pieces = max(1, int(math.ceil((uhi - ulo) / step)))
    edges = [ulo + (uhi - ulo) * k / pieces for k in range(pieces + 1)]

    def g(u):
        x = math.exp(u)
        return f(x) * x

    return math.fsum(integrate_finite(g, a, b, spec) for a, b in zip(edges[:-1], edges[1:]))
