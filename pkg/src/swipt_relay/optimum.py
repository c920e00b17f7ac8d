"""Outage-optimal power-splitting ratio.

The high-SNR outage approximations are smooth in ``theta`` and blow up at
both ends of (0, 1), so their minimizer is the root of the first-order
condition.  Each condition is multiplied through by
``theta^(N+1) (1-theta)^(N+1)`` to remove the poles and then solved by
bracketing, bisection and a short secant polish.

The result minimizes the high-SNR surrogate, not the exact outage; the two
agree as ``rho1`` grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .analysis.distributions import check_interference_params
from .analysis.outage import second_hop_series
from .errors import BracketFailure, SchemeUnsupported
from .analysis.capacity import capacity_upper_bound
from .mc import _merge_moments, _moments, estimate_outage_grid, map_chunks
from .model import SystemParams
from .schemes import Scheme, check_supported, sinr_from_stats

THETA_LO = 1e-6
THETA_HI = 1.0 - 1e-6
BRACKET_GRID = 400
THETA_TOL = 1e-13
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class ThetaPolynomial:
    """First-order condition of the high-SNR outage in ``theta``.

    ``coeffs`` holds the named coefficients:

    * noise-limited: ``a1, b1, c1, d1`` in
      ``a1 t^(N+1) - b1 (1-t)^(N+1) - c1 t (1-t)^N - d1 (1-t)^(N+1) ln(1-t)``;
    * MRC/MRT: ``A`` (sequence over n < N) and ``B`` in
      ``sum_n A[n] (1-t)^(n-N-1) - B / t^(N+1)``;
    * ZF/MRT: ``A1, B1`` in ``A1/(1-t)^N - B1/t^(N+1)``;
    * MMSE/MRT: ``lead``, ``second`` and ``B`` in
      ``lead/(1-t)^(N+1) + second/(1-t)^N - B/t^(N+1)``.
    """

    scheme: Scheme
    n_antennas: int
    coeffs: dict = field(default_factory=dict)

    def terms(self, t: float) -> list:
        """Terms of the condition after multiplying by ``t^(N+1)(1-t)^(N+1)``."""
        n = self.n_antennas
        c = self.coeffs
        u = 1.0 - t
        if self.scheme is Scheme.NOISE_LIMITED:
            return [c["a1"] * t ** (n + 1), -c["b1"] * u ** (n + 1), -c["c1"] * t * u ** n,
                    -c["d1"] * u ** (n + 1) * math.log(u)]
        if self.scheme is Scheme.MRC_MRT:
            return [a * u ** k * t ** (n + 1) for k, a in enumerate(c["A"])] + [-c["B"] * u ** (n + 1)]
        if self.scheme is Scheme.ZF_MRT:
            return [c["A1"] * u * t ** (n + 1), -c["B1"] * u ** (n + 1)]
        return [c["lead"] * t ** (n + 1), c["second"] * u * t ** (n + 1), -c["B"] * u ** (n + 1)]

    def __call__(self, t: float) -> float:
        return math.fsum(self.terms(t))

    def scale(self, t: float) -> float:
        return math.fsum(abs(v) for v in self.terms(t))


@dataclass(frozen=True)
class ThetaSolution:
    """Root of the first-order condition.

    Attributes
    ----------
    theta_star : float
    residual : float
        Condition value at ``theta_star`` divided by the sum of the
        magnitudes of its terms.
    bracket : float
        Width of the final bisection interval.
    """

    theta_star: float
    residual: float
    bracket: float


def theta_polynomial(scheme, params: SystemParams) -> ThetaPolynomial:
    """Coefficients of the first-order condition for ``scheme``."""
    scheme = Scheme.parse(scheme)
    n = params.n_antennas
    eta_n = params.eta ** n
    d2n = params.loss2 ** n
    if scheme is Scheme.NOISE_LIMITED:
        k = d2n / (eta_n * math.gamma(n))
        log_term = math.log(params.rho1) - math.log(params.loss1 * params.gamma_th) - specfun.EULER_GAMMA
        return ThetaPolynomial(scheme, n, {"a1": float(n), "b1": k * n * log_term, "c1": k, "d1": k * n})
    if scheme is Scheme.ZF_MRT and n < 2:
        raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
    check_interference_params(params, scheme)
    mi = params.snr_i
    big_b = d2n * second_hop_series(params) / (eta_n * math.gamma(n) ** 2)
    if scheme is Scheme.MRC_MRT:
        a = [mi ** k / math.factorial(n - k - 1) for k in range(n)]
        return ThetaPolynomial(scheme, n, {"A": a, "B": big_b})
    if scheme is Scheme.ZF_MRT:
        x = params.loss1 * params.gamma_th / params.rho1
        return ThetaPolynomial(scheme, n, {"A1": 1.0 / math.factorial(n - 2), "B1": big_b * x})
    return ThetaPolynomial(scheme, n, {"lead": 1.0 / math.gamma(n),
                                       "second": (n - 1) * mi / math.gamma(n), "B": big_b})


def _solve(poly: ThetaPolynomial) -> ThetaSolution:
    grid = np.linspace(THETA_LO, THETA_HI, BRACKET_GRID)
    vals = [poly(t) for t in grid]
    lo = hi = None
    for k in range(len(grid) - 1):
        if vals[k] == 0.0:
            return ThetaSolution(float(grid[k]), 0.0, 0.0)
        if vals[k] * vals[k + 1] < 0:
            lo, hi, flo = float(grid[k]), float(grid[k + 1]), vals[k]
            break
    if lo is None:
        raise BracketFailure("the first-order condition does not change sign on "
                             f"({THETA_LO}, {THETA_HI}); no interior optimum")
    while hi - lo > THETA_TOL:
        mid = 0.5 * (lo + hi)
        fm = poly(mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    width = hi - lo
    # secant polish inside the final bracket
    a, b = lo, hi
    fa, fb = poly(a), poly(b)
    t = 0.5 * (a + b)
    if fb != fa:
        cand = b - fb * (b - a) / (fb - fa)
        if lo <= cand <= hi:
            t = cand
    res = abs(poly(t)) / max(poly.scale(t), 1e-300)
    return ThetaSolution(t, res, width)


def optimal_theta(scheme, params: SystemParams) -> ThetaSolution:
    """Outage-optimal power-splitting ratio from the high-SNR approximation.

    Raises
    ------
    BracketFailure
        If the condition has no sign change on ``(1e-6, 1 - 1e-6)``.
    DegenerateParams, SchemeUnsupported
        As for the outage approximations.
    """
    return _solve(theta_polynomial(scheme, params))


def mrc_single_antenna_theta(params: SystemParams, include_d2: bool = True) -> float:
    """Closed-form optimum for MRC/MRT with one antenna: ``sqrt(B)/(1 + sqrt(B))``.

    ``B = d2^tau X`` with
    ``X = d_i^tau rho1 ln(mu_i/mu1) / (eta (d1^tau rho_i - d_i^tau rho1))``.
    ``include_d2=False`` returns the commonly printed version without the
    ``d2^tau`` factor, which coincides only for ``d2^tau = 1``.
    """
    check_interference_params(params)
    p = params
    x = p.loss_i * p.rho1 * (math.log(p.snr_i) - math.log(p.snr1)) / (
        p.eta * (p.loss1 * p.rho_i - p.loss_i * p.rho1))
    b = x * (p.loss2 if include_d2 else 1.0)
    r = math.sqrt(b)
    return r / (1.0 + r)


@dataclass(frozen=True)
class ThetaScan:
    """Monte Carlo outage over a grid of ``theta`` values."""

    theta_grid: np.ndarray
    outage: np.ndarray
    std_error: np.ndarray
    argmin_theta: float


def _scan_grid(grid_points: int) -> np.ndarray:
    if grid_points < 11:
        raise ValueError("grid_points must be at least 11")
    return np.linspace(0.02, 0.98, grid_points)


def _tied_centre(grid: np.ndarray, values: np.ndarray, best) -> float:
    # the centre of the longest run of grid points that share the best value
    idx = np.flatnonzero(values == best)
    runs, start = [], idx[0]
    for a, b in zip(idx[:-1], idx[1:]):
        if b != a + 1:
            runs.append((start, a))
            start = b
    runs.append((start, idx[-1]))
    s, e = max(runs, key=lambda r: r[1] - r[0])
    return float(0.5 * (grid[s] + grid[e]))


def mc_theta_scan(scheme, params: SystemParams, grid_points: int = 49, samples_per_point: int = 10 ** 6,
                  seed: int = 0, workers: int = 1) -> ThetaScan:
    """Empirical outage on ``linspace(0.02, 0.98, grid_points)``.

    All grid points use the same channel draws.  When several points tie
    at the minimum, the centre of the tied run is returned.
    """
    grid = _scan_grid(grid_points)
    pts = [params.with_(theta=float(t)) for t in grid]
    est = estimate_outage_grid(scheme, pts, samples_per_point, seed, workers)
    out = np.array([e.mean for e in est])
    se = np.array([e.std_error for e in est])
    return ThetaScan(grid, out, se, _tied_centre(grid, out, out.min()))


@dataclass(frozen=True)
class CapacityScan:
    """Ergodic capacity over a grid of ``theta`` values."""

    theta_grid: np.ndarray
    capacity: np.ndarray
    std_error: np.ndarray
    argmax_theta: float


def capacity_theta_scan(scheme, params: SystemParams, grid_points: int = 49, samples_per_point: int = 10 ** 6,
                        seed: int = 0, workers: int = 1, method: str = "mc") -> CapacityScan:
    """Capacity-maximizing ``theta`` by grid search; no root finding is attempted.

    ``method="mc"`` averages ``log2(1 + gamma)/2`` over draws shared by all
    grid points; ``method="bound"`` maximizes the analytic upper bound
    (standard errors are then zero).
    """
    scheme = Scheme.parse(scheme)
    grid = _scan_grid(grid_points)
    pts = [params.with_(theta=float(t)) for t in grid]
    if method == "bound":
        cap = np.array([capacity_upper_bound(scheme, p) for p in pts])
        return CapacityScan(grid, cap, np.zeros_like(cap), _tied_centre(grid, cap, cap.max()))
    if method != "mc":
        raise ValueError(f"unknown method {method!r}; use 'mc' or 'bound'")
    for p in pts:
        check_supported(scheme, p)

    def moments(stats):
        return [_moments(0.5 * np.log2(1.0 + sinr_from_stats(scheme, stats, p).gamma_e2e)) for p in pts]

    parts = map_chunks(params, samples_per_point, seed, moments, workers)
    cap, se = [], []
    for i in range(len(pts)):
        n, mean, m2 = _merge_moments(q[i] for q in parts)
        cap.append(mean)
        se.append(math.sqrt(m2 / (n - 1) / n) if n > 1 else 0.0)
    cap = np.array(cap)
    return CapacityScan(grid, cap, np.array(se), _tied_centre(grid, cap, cap.max()))
