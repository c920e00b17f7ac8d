"""Upper bounds on the ergodic capacity.

For every scheme the end-to-end capacity is split as
``C = C1 + C2 - C_T`` with ``C_i = E[log2(1 + gamma_i)]/2`` and
``C_T = E[log2(1 + gamma1 + gamma2)]/2``.  Convexity of
``log2(1 + e^x + e^y)`` gives ``C_T >= log2(1 + e^{E ln gamma1} +
e^{E ln gamma2})/2`` by Jensen, which turns the identity into an upper bound.

The per-hop capacities that would otherwise be Meijer-G expressions are
computed here as one-dimensional integrals with adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .. import specfun
from ..errors import SchemeUnsupported
from ..model import SystemParams
from ..schemes import Scheme
from . import distributions as dist
from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate_to_inf

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CapacityTerms:
    """The four ingredients of the bound and the bound itself (bits/use)."""

    c1: float
    c2: float
    mean_log1: float
    mean_log2: float

    @property
    def value(self) -> float:
        jensen = 0.5 * math.log2(1.0 + _safe_exp(self.mean_log1) + _safe_exp(self.mean_log2))
        return max(0.0, self.c1 + self.c2 - jensen)


def _safe_exp(v: float) -> float:
    return math.exp(v) if v < 700 else math.inf


# ------------------------------------------------------------ building blocks

def capacity_erlang(n: int, snr: float) -> float:
    """``E[log2(1 + snr G)]/2`` for G ~ Gamma(n, 1).

    ``(1/(2 ln 2)) sum_{k<n} x^k e^x Gamma(-k, x)`` with ``x = 1/snr``.
    """
    if snr <= 0 or n < 1:
        return 0.0
    x = 1.0 / snr
    lx = math.log(x)
    terms = [math.exp(k * lx) * specfun.upper_inc_gamma_scaled(-float(k), x) for k in range(n)]
    return math.fsum(terms) / (2.0 * LN2)


def d_upper_gamma_da(a: float, z: float, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Derivative of Gamma(a, z) with respect to the order ``a``.

    ``int_z^inf t^(a-1) ln t e^-t dt``, by quadrature.
    """
    def f(t):
        return math.exp((a - 1.0) * math.log(t) - t) * math.log(t)
    brk = (1.0,) if z < 1.0 else ()
    return integrate_to_inf(f, z, max(1.0, a), spec, breaks=brk)


def scaled_order_derivative_residual(z: float, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``e^z (dGamma(a, z)/da - Gamma(a, z) ln z)`` at ``a = 1``.

    After ``t = z + s`` this is ``int_0^inf ln(1 + s/z) e^-s ds``, evaluated by
    quadrature in that form so that the ``ln z`` parts cancel analytically.
    """
    return integrate_to_inf(lambda s: math.log1p(s / z) * math.exp(-s), 0.0, 1.0, spec,
                            breaks=(z,) if z < 50 else ())


def _mrc_i2(m: int, n: int, rt: float, ri: float, spec: QuadratureSpec) -> float:
    # int_0^inf e^(-x/rt) x^m / (1+x) (1 + (ri/rt) x)^-(n+1) dx
    r = ri / rt

    def f(x):
        return math.exp(-x / rt + (m * math.log(x) if m else 0.0)
                        - math.log1p(x) - (n + 1) * math.log1p(r * x))
    brk = [1.0] + ([1.0 / r] if r > 0 else [])
    return integrate_to_inf(f, 0.0, rt * (m + 1), spec, breaks=brk)


# ------------------------------------------------------------ first hop

def capacity_gamma1(scheme, params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``E[log2(1 + gamma1)]/2`` for the first-hop SINR of ``scheme``."""
    scheme = Scheme.parse(scheme)
    n = params.n_antennas
    rt = params.info_snr1
    if rt <= 0:
        return 0.0
    if scheme is Scheme.NOISE_LIMITED:
        return capacity_erlang(n, rt)
    if scheme is Scheme.ZF_MRT:
        if n < 2:
            raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
        return capacity_erlang(n - 1, rt)
    ri = params.info_snr_i
    if scheme is Scheme.MRC_MRT:
        terms = []
        for m in range(n):
            for k in range(m + 1):
                w = math.exp(-m * math.log(rt) - math.lgamma(m - k + 1)) * ri ** k
                terms.append(w * _mrc_i2(m, k, rt, ri, spec))
        return math.fsum(terms) / (2.0 * LN2)
    # MMSE: Erlang capacity minus the correction carried by the cdf

    def corr(t):
        return math.exp(-t + n * math.log(t) - math.lgamma(n)) * ri / (1.0 + ri * t) * rt / (1.0 + rt * t)
    brk = [1.0 / rt] + ([1.0 / ri] if ri > 0 else [])
    c = integrate_to_inf(corr, 0.0, float(n), spec, breaks=brk) if ri > 0 else 0.0
    return capacity_erlang(n, rt) - c / (2.0 * LN2)


def mrc_mean_log_gamma1_series(params: SystemParams) -> float:
    """``E[ln gamma1]`` for MRC/MRT from the moment-derivative expansion.

    ``ln rho~ + psi(1) - e^z G(z) + sum_{m=1}^{N-1} sum_{n=0}^m
    rho~I^(n-m)/(m-n)! Gamma(m) U(m, m-n, z)`` with ``z = 1/rho~I`` and
    ``e^z G(z)`` from :func:`scaled_order_derivative_residual`.
    """
    n = params.n_antennas
    rt, ri = params.info_snr1, params.info_snr_i
    z = 1.0 / ri
    terms = [math.log(rt), specfun.digamma(1.0), -scaled_order_derivative_residual(z)]
    for m in range(1, n):
        for k in range(m + 1):
            terms.append(ri ** (k - m) / math.factorial(m - k) * math.gamma(m)
                         * specfun.kummer_u(float(m), float(m - k), z))
    return math.fsum(terms)


def mean_log_gamma1(scheme, params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``E[ln gamma1]`` for the first-hop SINR of ``scheme``."""
    scheme = Scheme.parse(scheme)
    n = params.n_antennas
    rt = params.info_snr1
    if rt <= 0:
        return -math.inf
    if scheme is Scheme.NOISE_LIMITED:
        return math.log(rt) + specfun.digamma(float(n))
    if scheme is Scheme.ZF_MRT:
        if n < 2:
            raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
        return math.log(rt) + specfun.digamma(n - 1.0)
    ri = params.info_snr_i
    if ri <= 0:
        return math.log(rt) + specfun.digamma(float(n))
    if scheme is Scheme.MRC_MRT:
        return mrc_mean_log_gamma1_series(params)

    def corr(t):
        return math.exp(-t + (n - 1) * math.log(t) - math.lgamma(n)) * ri / (1.0 + ri * t)
    c = integrate_to_inf(corr, 0.0, float(n), spec, breaks=[1.0 / ri])
    return math.log(rt) + specfun.digamma(float(n)) - c


# ------------------------------------------------------------ second hop

def _keyhole_density(n: int, w: float) -> float:
    # density of X*Y with X, Y iid Gamma(n): 2 w^(n-1) K0(2 sqrt w) / Gamma(n)^2
    if w <= 0:
        return 0.0
    arg = 2.0 * math.sqrt(w)
    return 2.0 * math.exp((n - 1) * math.log(w) - 2.0 * math.lgamma(n) - arg) * specfun.bessel_k_int_scaled(0, arg)


def capacity_gamma2_nl(params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``E[log2(1 + gamma2)]/2`` without interference (keyhole product)."""
    kappa = params.eta * params.theta * params.snr1 / params.loss2
    if kappa <= 0:
        return 0.0
    n = params.n_antennas
    f = lambda w: math.log1p(kappa * w) * _keyhole_density(n, w)
    return 0.5 * integrate_to_inf(f, 0.0, float(n * n), spec, breaks=(1.0 / kappa, 1.0)) / LN2


def _c_gamma2_cci_mixture(params: SystemParams, spec: QuadratureSpec):
    n = params.n_antennas
    gain = params.eta * params.theta / params.loss2
    terms = []
    for t in dist.z_mixture(params):
        beta = t.rate / gain
        p = t.power
        for m in range(n):
            nu = m - p - 1

            def f(x, nu=nu, p=p, beta=beta):
                arg = 2.0 * math.sqrt(beta * x)
                return math.exp((p + 1) * math.log(x) - math.log1p(x) + 0.5 * nu * math.log(beta * x)
                                - arg) * specfun.bessel_k_int_scaled(nu, arg)
            i3 = integrate_to_inf(f, 0.0, 1.0 / beta, spec, breaks=(1.0,))
            lw = t.log_coef - math.lgamma(m + 1) - (p + 1) * math.log(gain)
            terms.append(t.sign * math.exp(lw) * i3 / LN2)
    return dist.fsum_amplification(terms)


def capacity_gamma2_cci(params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``E[log2(1 + gammaI2)]/2`` with the interferer as an energy source.

    Sum over the Z mixture of Bessel-K integrals; when the alternating sum
    cancels too much, ``E_Z[capacity_erlang(N, gain * Z)]`` is integrated
    over the stable density of Z instead.
    """
    dist.check_interference_params(params)
    if params.theta <= 0:
        return 0.0
    val, amp = _c_gamma2_cci_mixture(params, spec)
    if amp > dist.MAX_AMPLIFICATION or not math.isfinite(val):
        n = params.n_antennas
        gain = params.eta * params.theta / params.loss2
        return dist._z_expect(lambda z: capacity_erlang(n, gain * z), params, spec)
    return val


def mean_log_gamma2(scheme, params: SystemParams) -> float:
    """``E[ln gamma2]``: keyhole form without interference, Z mixture with it."""
    scheme = Scheme.parse(scheme)
    n = params.n_antennas
    if params.theta <= 0:
        return -math.inf
    gain = params.eta * params.theta / params.loss2
    if scheme is Scheme.NOISE_LIMITED:
        return math.log(gain * params.snr1) + 2.0 * specfun.digamma(float(n))
    return math.log(gain) + specfun.digamma(float(n)) + dist.mean_log_z(params)


# ------------------------------------------------------------ assembled bound

def capacity_terms(scheme, params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> CapacityTerms:
    """All ingredients of the capacity upper bound of ``scheme``."""
    scheme = Scheme.parse(scheme)
    if scheme.has_interference:
        dist.check_interference_params(params, scheme)
    c1 = capacity_gamma1(scheme, params, spec)
    if scheme is Scheme.NOISE_LIMITED:
        c2 = capacity_gamma2_nl(params, spec)
    else:
        c2 = capacity_gamma2_cci(params, spec)
    return CapacityTerms(c1, c2, mean_log_gamma1(scheme, params, spec), mean_log_gamma2(scheme, params))


def capacity_upper_bound(scheme, params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Upper bound on the ergodic capacity (bits per channel use).

    Returns 0 for ``theta`` equal to 0 or 1, where no information gets
    through.

    Raises
    ------
    DegenerateParams
        Interference schemes with equal path-loss-scaled SNRs.
    SchemeUnsupported
        ZF with a single antenna.
    QuadratureError
        If one of the integrals misses its tolerance.
    """
    if params.theta <= 0.0 or params.theta >= 1.0:
        scheme = Scheme.parse(scheme)
        if scheme.has_interference:
            dist.check_interference_params(params, scheme)
        return 0.0
    return capacity_terms(scheme, params, spec).value
