"""Distributions of the per-hop SINRs.

The second-hop SNR under interference is ``(eta*theta/d2^tau) * Z * ||h2||^2``
with ``Z = mu1*G1 + muI*GI`` a sum of two independent Gamma(N) variables of
different scales.  Its density is written as a finite mixture of terms
``coef * x^p * exp(-rate*x)`` (partial fractions of the Laplace transform).
The coefficients alternate in sign and grow like ``|1/muI - 1/mu1|^(1-2N)``,
so every evaluation through the mixture measures its own cancellation and
falls back to quadrature over the Kummer-function form of the density when
too many digits are lost.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .. import specfun
from ..errors import DegenerateParams, SchemeUnsupported
from ..model import SystemParams, gamma_ccdf, gamma_cdf
from ..schemes import Scheme
from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate_to_inf

# largest tolerated (sum |terms|) / |sum| before switching to quadrature
MAX_AMPLIFICATION = 1e5


def check_interference_params(params: SystemParams, scheme: Scheme = Scheme.MRC_MRT) -> None:
    """Validate the preconditions shared by the interference-limited formulas."""
    if scheme is Scheme.ZF_MRT and params.n_antennas < 2:
        raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
    if not params.rho_i > 0:
        raise ValueError("the interference formulas need rho_i > 0")
    m1, mi = params.snr1, params.snr_i
    if abs(m1 - mi) <= 1e-12 * max(m1, mi):
        raise DegenerateParams(
            "source and interference SNRs coincide after path loss "
            f"(rho1/d1^tau = rho_i/d_i^tau = {m1:.6g}); the sum-of-gammas closed forms are "
            "singular there. Perturb rho_i explicitly to proceed.")


def fsum_amplification(terms) -> tuple:
    """Exactly rounded sum of ``terms`` and the ratio sum|t| / |sum t|."""
    s = math.fsum(terms)
    mag = math.fsum(abs(t) for t in terms)
    if mag == 0:
        return 0.0, 1.0
    return s, (mag / abs(s) if s != 0 else math.inf)


# ----------------------------------------------------------------- Z mixture

@dataclass(frozen=True)
class MixtureTerm:
    """``sign * exp(log_coef) * x^power * exp(-rate*x)``."""

    log_coef: float
    sign: float
    power: int
    rate: float


def z_mixture(params: SystemParams) -> list:
    """Partial-fraction terms of the density of Z = mu1*||h1||^2 + muI*||hI||^2."""
    n = params.n_antennas
    lam1, lami = 1.0 / params.snr1, 1.0 / params.snr_i
    base = n * (math.log(lam1) + math.log(lami))
    out = []
    for rate, other in ((lam1, lami), (lami, lam1)):
        delta = other - rate
        ld = math.log(abs(delta))
        for s in range(1, n + 1):
            # prod_{j=1}^{s-1} (1-N-j) has sign (-1)^(s-1)
            lprod = math.fsum(math.log(n + j - 1) for j in range(1, s))
            lc = base + lprod - math.lgamma(n - s + 1) - math.lgamma(s) + (1 - n - s) * ld
            sign = (-1.0) ** (s - 1)
            if delta < 0 and (1 - n - s) % 2:
                sign = -sign
            out.append(MixtureTerm(lc, sign, n - s, rate))
    return out


def _pdf_z_stable(x: float, params: SystemParams) -> float:
    # f(x) = (l1 lI)^N x^(2N-1) e^(-lmax x) M(N, 2N, (lmax - lmin) x) / Gamma(2N);
    # the scaled Kummer function absorbs e^((lmax - lmin) x) without cancellation
    n = params.n_antennas
    l1, li = 1.0 / params.snr1, 1.0 / params.snr_i
    lmax, lmin = max(l1, li), min(l1, li)
    if x <= 0:
        return 0.0
    lm = specfun.log_kummer_m(n, 2 * n, (lmax - lmin) * x, scaled=True)
    return math.exp(n * math.log(l1 * li) + (2 * n - 1) * math.log(x) - lmin * x
                    - math.lgamma(2 * n) + lm)


def _z_expect(g, params: SystemParams, spec: QuadratureSpec = DEFAULT_QUAD, breaks=()) -> float:
    """E[g(Z)] by quadrature over the stable density."""
    n = params.n_antennas
    scale = n * (params.snr1 + params.snr_i)
    # the density has a feature on the scale of each component
    own = tuple(n * m for m in (params.snr1, params.snr_i))
    return integrate_to_inf(lambda z: g(z) * _pdf_z_stable(z, params), 0.0, scale, spec,
                            tuple(sorted(set(breaks + own))))


def pdf_z(x: float, params: SystemParams) -> float:
    """Density of Z = rho1 ||h1||^2 / d1^tau + rho_i ||h_i||^2 / d_i^tau.

    Raises
    ------
    DegenerateParams
        If the two path-loss-scaled SNRs coincide.
    """
    check_interference_params(params)
    if x <= 0:
        return 0.0
    lx = math.log(x)
    terms = [t.sign * math.exp(t.log_coef + t.power * lx - t.rate * x) for t in z_mixture(params)]
    val, amp = fsum_amplification(terms)
    if amp > MAX_AMPLIFICATION:
        return _pdf_z_stable(x, params)
    return max(val, 0.0)


def mean_log_z(params: SystemParams) -> float:
    """E[ln Z] from the mixture: int ln x x^p e^(-l x) dx = p!/l^(p+1) (psi(p+1) - ln l)."""
    check_interference_params(params)
    terms = []
    for t in z_mixture(params):
        lr = math.log(t.rate)
        mag = math.exp(t.log_coef + math.lgamma(t.power + 1) - (t.power + 1) * lr)
        terms.append(t.sign * mag * (specfun.digamma(t.power + 1.0) - lr))
    val, amp = fsum_amplification(terms)
    if amp > MAX_AMPLIFICATION:
        return _z_expect(math.log, params)
    return val


# ----------------------------------------------------------------- first hop

def _info_threshold(x: float, params: SystemParams) -> float:
    return x / params.info_snr1


def ccdf_gamma_i1(scheme, x: float, params: SystemParams) -> float:
    """Prob(first-hop SINR > x) for ``scheme``.

    MRC: finite double sum over ``rho~I^n / (1 + (muI/mu1) x)^(n+1)``; ZF:
    Erlang(N-1) tail; MMSE: Erlang(N) tail minus a 2F1 correction; the
    noise-limited case is the Erlang(N) tail.
    """
    scheme = Scheme.parse(scheme)
    if x <= 0:
        return 1.0
    if params.info_snr1 == 0:
        return 0.0
    n = params.n_antennas
    t = _info_threshold(x, params)
    if scheme is Scheme.NOISE_LIMITED:
        return gamma_ccdf(n, t)
    if scheme is Scheme.ZF_MRT:
        if n < 2:
            raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
        return gamma_ccdf(n - 1, t)
    ri = params.info_snr_i
    w = params.snr_i / params.snr1 * x          # (muI/mu1) x = rho~I t
    if scheme is Scheme.MRC_MRT:
        lt = math.log(t)
        l1w = math.log1p(w)
        terms = [math.exp(m * lt - t - math.lgamma(m - k + 1) - (k + 1) * l1w) * ri ** k
                 for m in range(n) for k in range(m + 1)]
        return min(1.0, math.fsum(terms))
    # MMSE
    corr = math.exp(-t + n * math.log(t) - math.lgamma(n)) * ri * specfun.gauss_2f1(2.0, 1.0, 2.0, -w)
    return max(0.0, gamma_ccdf(n, t) - corr)


def cdf_gamma_i1(scheme, x: float, params: SystemParams) -> float:
    """Prob(first-hop SINR < x); complements :func:`ccdf_gamma_i1` without
    losing relative accuracy in the lower tail."""
    scheme = Scheme.parse(scheme)
    if x <= 0:
        return 0.0
    if params.info_snr1 == 0:
        return 1.0
    n = params.n_antennas
    t = _info_threshold(x, params)
    if scheme is Scheme.NOISE_LIMITED:
        return gamma_cdf(n, t)
    if scheme is Scheme.ZF_MRT:
        if n < 2:
            raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")
        return gamma_cdf(n - 1, t)
    if scheme is Scheme.MMSE_MRT:
        ri = params.info_snr_i
        w = params.snr_i / params.snr1 * x
        corr = math.exp(-t + n * math.log(t) - math.lgamma(n)) * ri * specfun.gauss_2f1(2.0, 1.0, 2.0, -w)
        return min(1.0, gamma_cdf(n, t) + corr)
    return max(0.0, 1.0 - ccdf_gamma_i1(scheme, x, params))


# ----------------------------------------------------------------- second hop

def _second_hop_gain(params: SystemParams) -> float:
    return params.eta * params.theta / params.loss2


def ccdf_gamma_i2(x: float, params: SystemParams) -> float:
    """Prob(second-hop SNR > x) under interference.

    ``E_Z[Q(N, b/Z)]`` with ``b = x d2^tau/(eta theta)``: each mixture term
    integrates in closed form to ``2 (b/l)^((p-m+1)/2) K_(p-m+1)(2 sqrt(b l))``.
    """
    check_interference_params(params)
    if x <= 0:
        return 1.0
    if params.theta == 0:
        return 0.0
    n = params.n_antennas
    b = x / _second_hop_gain(params)
    lb = math.log(b)
    terms = []
    for t in z_mixture(params):
        lr = math.log(t.rate)
        arg = 2.0 * math.sqrt(b * t.rate)
        for m in range(n):
            nu = t.power - m + 1
            lk = math.log(specfun.bessel_k_int_scaled(nu, arg)) - arg
            lterm = (t.log_coef + m * lb - math.lgamma(m + 1) + math.log(2.0)
                     + 0.5 * nu * (lb - lr) + lk)
            terms.append(t.sign * math.exp(lterm))
    val, amp = fsum_amplification(terms)
    if amp > MAX_AMPLIFICATION:
        return 1.0 - _cdf_gamma_i2_quad(x, params)
    return min(1.0, max(0.0, val))


# abs_tol far below any probability of interest: the lower tail is wanted to
# full relative accuracy
TAIL_QUAD = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-300)


def _cdf_gamma_i2_quad(x: float, params: SystemParams) -> float:
    n = params.n_antennas
    b = x / _second_hop_gain(params)
    return _z_expect(lambda z: gamma_cdf(n, b / z), params, TAIL_QUAD, breaks=(b,))


def cdf_gamma_i2(x: float, params: SystemParams) -> float:
    """Prob(second-hop SNR < x) under interference (shared by all schemes).

    Complementing the Bessel-K sum loses relative accuracy once the
    probability drops below ~0.1; there the expectation over Z is integrated
    directly instead.
    """
    check_interference_params(params)
    if x <= 0:
        return 0.0
    tail = ccdf_gamma_i2(x, params)
    if tail > 0.9:
        return _cdf_gamma_i2_quad(x, params)
    return max(0.0, 1.0 - tail)


def ccdf_gamma2_nl(x: float, params: SystemParams) -> float:
    """Prob(second-hop SNR > x) without interference.

    The SNR is ``kappa * X * Y`` with X, Y i.i.d. Gamma(N); its tail is
    ``(2/Gamma(N)) sum_m y^((N+m)/2)/m! K_(N-m)(2 sqrt(y))`` at ``y = x/kappa``.
    """
    if x <= 0:
        return 1.0
    kappa = _second_hop_gain(params) * params.snr1
    if kappa == 0:
        return 0.0
    n = params.n_antennas
    y = x / kappa
    ly = math.log(y)
    arg = 2.0 * math.sqrt(y)
    terms = []
    for m in range(n):
        lk = math.log(specfun.bessel_k_int_scaled(n - m, arg)) - arg
        terms.append(math.exp(math.log(2.0) - math.lgamma(n) + 0.5 * (n + m) * ly
                              - math.lgamma(m + 1) + lk))
    return min(1.0, math.fsum(terms))
