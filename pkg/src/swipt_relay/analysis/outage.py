"""Outage probability: exact (noise-limited), lower bounds and high-SNR forms.

Every public function returns 1 for a degenerate split ``theta in {0, 1}``
(no harvested power or no information branch), matching what the Monte Carlo
engine reports for the same parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .. import specfun
from ..errors import SchemeUnsupported
from ..model import SystemParams, gamma_cdf
from ..schemes import Scheme
from . import distributions as dist
from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate_positive_log, integrate_to_inf

TAIL_QUAD = dist.TAIL_QUAD

# below this value the Bessel-sum lower bound has lost too many digits to
# the leading "1 -" and the defining integral is used instead
BOUND_CANCELLATION_FLOOR = 1e-6


@dataclass(frozen=True)
class OutageCoeffs:
    """Coefficients of the noise-limited outage event.

    With X = ||h1||^2 and Y = ||h2||^2 the end-to-end SNR falls below the
    threshold iff ``Y (c X^2 - d X) < a X + b``.
    """

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_params(cls, p: SystemParams) -> "OutageCoeffs":
        g = p.gamma_th
        return cls(a=(1 - p.theta) * p.snr1 * g,
                   b=g,
                   c=p.eta * p.theta * (1 - p.theta) * p.snr1 ** 2 / p.loss2,
                   d=p.eta * p.theta * p.snr1 * g / p.loss2)


@dataclass(frozen=True)
class OutageBoundFactors:
    """Success probabilities of the two hops: f1 = P(gamma1 >= th), f2 likewise."""

    f1: float
    f2: float

    @property
    def bound(self) -> float:
        # 1 - f1 f2 written without cancellation
        p1, p2 = 1.0 - self.f1, 1.0 - self.f2
        return min(1.0, p1 + p2 - p1 * p2)


@dataclass(frozen=True)
class OutageBound:
    """A lower bound on outage; ``factors`` is None for the noise-limited link."""

    probability: float
    factors: Optional[OutageBoundFactors] = None
    # P(gamma1 < th), P(gamma2 < th) kept at full relative accuracy
    hop_outages: Optional[tuple] = None


class ArrayGains(NamedTuple):
    mrc: float
    zf: float
    mmse: float


def _degenerate(p: SystemParams) -> bool:
    return p.theta <= 0.0 or p.theta >= 1.0


# ------------------------------------------------------------ exact, noise-limited

def _erlang_pdf(n: int, x: float) -> float:
    if x <= 0:
        return 0.0 if n > 1 else 1.0
    return math.exp((n - 1) * math.log(x) - x - math.lgamma(n))


def _average_over_first_hop(n: int, lo: float, thresh_of_u, scale_u: float,
                            spec: QuadratureSpec) -> float:
    """P(N, lo) + int_0^inf f_N(lo + u) P(N, thresh_of_u(u)) du.

    ``thresh_of_u`` is the second-hop threshold, infinite at u = 0 and
    decreasing; ``scale_u`` is where it crosses ~1.  The integrand is spread
    over many decades in u at high SNR, so the bulk is integrated on a
    logarithmic grid.
    """
    def f(u):
        return _erlang_pdf(n, lo + u) * gamma_cdf(n, thresh_of_u(u))

    head = gamma_cdf(n, lo)
    u_min = 1e-10 * min(scale_u, max(lo, 1e-300), 1.0)
    u_max = lo + 60.0 + 4.0 * n
    # on (0, u_min) the inner probability is 1 to within rounding
    first = u_min * _erlang_pdf(n, lo + 0.5 * u_min)
    bulk = integrate_positive_log(f, u_min, u_max, spec)
    tail = integrate_to_inf(f, u_max, 1.0, spec)
    return min(1.0, math.fsum((head, first, bulk, tail)))


def outage_exact_nl(params: SystemParams, spec: QuadratureSpec = TAIL_QUAD) -> float:
    """Exact outage probability without interference.

    Single integral over ``X = ||h1||^2``: outage is certain for
    ``X < d/c`` and otherwise happens when ``Y < (aX + b)/(cX^2 - dX)``.

    Raises
    ------
    QuadratureError
        If the adaptive quadrature misses its tolerance; the partial value
        is attached to the exception.
    """
    if _degenerate(params):
        return 1.0
    k = OutageCoeffs.from_params(params)
    n = params.n_antennas
    lo = k.d / k.c

    def thresh(u):
        x = lo + u
        return (k.a * x + k.b) / (x * k.c * u)

    return _average_over_first_hop(n, lo, thresh, (k.a + k.b / max(lo, 1e-300)) / k.c, spec)


# ------------------------------------------------------------ lower bounds

def _lower_bound_nl_series(params: SystemParams) -> float:
    k = OutageCoeffs.from_params(params)
    n = params.n_antennas
    dc, ac = k.d / k.c, k.a / k.c
    arg = 2.0 * math.sqrt(ac)
    ldc, lac = math.log(dc), math.log(ac)
    terms = []
    for i in range(n):
        for j in range(n):
            lk = math.log(specfun.bessel_k_int_scaled(i - j - 1, arg)) - arg
            terms.append(math.exp(math.log(2.0) - dc - math.lgamma(n) - math.lgamma(i + 1)
                                  + math.log(math.comb(n - 1, j)) + (n - j - 1) * ldc
                                  + 0.5 * (i + j + 1) * lac + lk))
    return 1.0 - math.fsum(terms)


def _lower_bound_nl_integral(params: SystemParams, spec: QuadratureSpec = TAIL_QUAD) -> float:
    k = OutageCoeffs.from_params(params)
    n = params.n_antennas
    lo = k.d / k.c
    return _average_over_first_hop(n, lo, lambda u: k.a / (k.c * u), k.a / k.c, spec)


def outage_lower_bound(scheme, params: SystemParams) -> OutageBound:
    """Lower bound on outage from an upper bound on the end-to-end SINR.

    Noise-limited: uses ``gamma <= gamma1 gamma2/(gamma1 + gamma2)``, which
    drops the constant ``b`` from the exact outage region and yields the
    closed Bessel-K double sum.  The sum is replaced by its defining integral
    when the result is below ``BOUND_CANCELLATION_FLOOR``.
    Interference schemes: ``gamma <= min(gamma1, gamma2)`` and
    ``1 - F1 F2`` with the two hops treated as independent; F2 is shared and F1 depends on the combiner.

    Raises
    ------
    DegenerateParams
        When the path-loss-scaled source and interference SNRs coincide.
    SchemeUnsupported
        ZF with a single antenna.
    """
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.ZF_MRT and params.n_antennas < 2:
        raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
    if scheme is Scheme.NOISE_LIMITED:
        if _degenerate(params):
            return OutageBound(1.0)
        p = _lower_bound_nl_series(params)
        if p < BOUND_CANCELLATION_FLOOR:
            p = _lower_bound_nl_integral(params)
        return OutageBound(min(1.0, max(0.0, p)))
    dist.check_interference_params(params, scheme)
    if _degenerate(params):
        return OutageBound(1.0, OutageBoundFactors(0.0, 0.0), (1.0, 1.0))
    g = params.gamma_th
    p1 = dist.cdf_gamma_i1(scheme, g, params)
    p2 = dist.cdf_gamma_i2(g, params)
    fac = OutageBoundFactors(1.0 - p1, 1.0 - p2)
    return OutageBound(min(1.0, p1 + p2 - p1 * p2), fac, (p1, p2))


# ------------------------------------------------------------ high-SNR forms

def array_gain_terms(params: SystemParams) -> ArrayGains:
    """Leading coefficients of the first-hop term of the high-SNR outage.

    a_MRC = sum_{n=0}^N (rho~I)^n/(N-n)!, a_ZF = 1/(N-1)!,
    a_MMSE = 1/N! + rho~I/(N-1)!, with rho~I = (1-theta) rho_i / d_i^tau.
    """
    n = params.n_antennas
    ri = params.info_snr_i
    mrc = math.fsum(ri ** k / math.factorial(n - k) for k in range(n + 1))
    zf = 1.0 / math.factorial(n - 1) if n >= 2 else math.nan
    mmse = 1.0 / math.factorial(n) + ri / math.factorial(n - 1)
    return ArrayGains(mrc, zf, mmse)


def _second_hop_series_hyp(n: int, r: float):
    z = 1.0 - r
    terms = [math.comb(n - 1, i) * (-1.0) ** (n - i - 1)
             * specfun.gauss_2f1(n, 2 * n - i - 1, 2 * n - i, z) / (2 * n - i - 1)
             for i in range(n)]
    return dist.fsum_amplification(terms)


def _second_hop_series_integral(n: int, r: float) -> float:
    # int_0^inf u^(N-1) (1+u)^-N (1+r u)^-N du
    def f(u):
        return math.exp((n - 1) * math.log(u) - n * math.log1p(u) - n * math.log1p(r * u))
    brk = [1.0 / r] if r > 0 else []
    return integrate_to_inf(f, 0.0, 1.0, DEFAULT_QUAD, breaks=[1.0] + brk)


def second_hop_series(params: SystemParams) -> float:
    """The alternating 2F1 sum of the second-hop high-SNR term.

    ``sum_i C(N-1,i) (-1)^(N-i-1) 2F1(N, 2N-i-1; 2N-i; 1 - muI/mu1)/(2N-i-1)``
    with mu = rho/d^tau.  It equals ``Gamma(N) mu1^N E[Z^-N]``, i.e. the
    integral ``int u^(N-1)(1+u)^-N (1+(muI/mu1)u)^-N du``, which is used when
    the alternating sum cancels badly (large mu1/muI).
    """
    n = params.n_antennas
    r = params.snr_i / params.snr1
    if r == 0:
        return math.inf
    val, amp = _second_hop_series_hyp(n, r)
    if amp > dist.MAX_AMPLIFICATION or not math.isfinite(val) or val <= 0:
        return _second_hop_series_integral(n, r)
    return val


def _nl_high_snr(params: SystemParams, ei_form: bool) -> float:
    n = params.n_antennas
    p = params
    if ei_form:
        # before the final asymptotic step: P(N, y) + E1(y) w^N / (N!(N-1)!)
        y = p.gamma_th / p.info_snr1
        w = p.gamma_th * p.loss2 / (p.eta * p.theta * p.snr1)
        return gamma_cdf(n, y) + specfun.exp_integral_e1(y) * math.exp(
            n * math.log(w) - math.lgamma(n + 1) - math.lgamma(n))
    x = p.gamma_th / p.snr1
    logterm = math.log(p.info_snr1 / p.gamma_th) - specfun.EULER_GAMMA
    return x ** n / math.factorial(n) * (
        (1.0 - p.theta) ** -n
        + logterm / math.gamma(n) * (p.loss2 / (p.eta * p.theta)) ** n)


def _cci_second_hop_term(params: SystemParams) -> float:
    n = params.n_antennas
    s = second_hop_series(params)
    return (params.loss2 / (params.eta * params.theta)) ** n * s / (
        math.factorial(n) * math.gamma(n))


def outage_high_snr(scheme, params: SystemParams, form: str = "default") -> float:
    """High-SNR approximation of the outage probability.

    Parameters
    ----------
    scheme : Scheme or str
    params : SystemParams
    form : str
        ``"default"`` for the fully simplified approximation.  The
        noise-limited link also accepts ``"ei"`` (the form that keeps the
        incomplete gamma and exponential integral); ZF accepts
        ``"two-term"`` which keeps the second-hop term that the default
        one-term power law drops.

    Notes
    -----
    With ``x = d1^tau gamma_th / rho1`` the interference forms read
    ``x^N (a_scheme/(1-theta)^N + (d2^tau/(eta theta))^N S/(N! Gamma(N)))``
    (ZF: ``a_ZF (x/(1-theta))^(N-1)`` plus optionally the same second term).
    """
    scheme = Scheme.parse(scheme)
    form = form.lower().replace("_", "-")
    if _degenerate(params):
        return 1.0
    n = params.n_antennas
    if scheme is Scheme.NOISE_LIMITED:
        if form not in ("default", "ei"):
            raise ValueError(f"unknown form {form!r} for the noise-limited link")
        return _nl_high_snr(params, form == "ei")
    if scheme is Scheme.ZF_MRT and n < 2:
        raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
    dist.check_interference_params(params, scheme)
    x = params.gamma_th / params.snr1
    gains = array_gain_terms(params)
    if scheme is Scheme.ZF_MRT:
        if form not in ("default", "one-term", "two-term"):
            raise ValueError(f"unknown form {form!r} for ZF/MRT")
        first = gains.zf * (x / (1.0 - params.theta)) ** (n - 1)
        if form == "two-term":
            return first + x ** n * _cci_second_hop_term(params)
        return first
    if form != "default":
        raise ValueError(f"form {form!r} is only defined for the noise-limited and ZF cases")
    a = gains.mrc if scheme is Scheme.MRC_MRT else gains.mmse
    return x ** n * (a / (1.0 - params.theta) ** n + _cci_second_hop_term(params))


def mrc_single_antenna_high_snr(params: SystemParams, printed: bool = False) -> float:
    """Closed form of the MRC/MRT high-SNR outage for one relay antenna.

    With N = 1 the 2F1 sum collapses to ``mu1 ln(mu1/muI)/(mu1 - muI)``, so

        x (1/(1-theta) + muI + d2^tau mu1 ln(mu1/muI) / ((mu1 - muI) eta theta))

    with ``x = d1^tau gamma_th / rho1``.  ``printed=True`` drops the factor
    ``mu1/(mu1 - muI)``, as in the commonly quoted simplified form; that
    version is only the large-``mu1/muI`` limit of the exact reduction.
    """
    if params.n_antennas != 1:
        raise ValueError("the single-antenna form needs n_antennas == 1")
    dist.check_interference_params(params)
    m1, mi = params.snr1, params.snr_i
    x = params.gamma_th / m1
    ratio = 1.0 if printed else m1 / (m1 - mi)
    log_term = params.loss2 * ratio * (math.log(m1) - math.log(mi)) / (params.eta * params.theta)
    return x * (1.0 / (1.0 - params.theta) + mi + log_term)


def cci_effect_margin(params: SystemParams) -> float:
    """Signed effect of the interferer on the single-antenna MRC/MRT outage.

    Difference between the bracket of the simplified single-antenna MRC/MRT
    approximation (printed form) and the bracket of the noise-limited
    high-SNR form at N = 1, both multiplying ``d1^tau gamma_th / rho1``.
    Positive: the interferer is detrimental; negative: beneficial.
    """
    p = params.with_(n_antennas=1)
    dist.check_interference_params(p)
    x = p.gamma_th / p.snr1
    with_cci = mrc_single_antenna_high_snr(p, printed=True) / x
    without = _nl_high_snr(p, False) / x
    return with_cci - without

