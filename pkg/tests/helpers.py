"""Independent reference estimators shared by the test modules."""
import math

import numpy as np
from scipy import integrate, special, stats

from swipt_relay.model import SystemParams
from swipt_relay.schemes import ChannelStats, Scheme, first_hop_sinr


def rel_err(x, ref):
    return abs(x - ref) / abs(ref)


def mc_sigma(p_hat, p_ref, n):
    """Binomial standard error with a floor at the reference probability.

    A plug-in estimate of zero events has zero standard error, which makes a
    3-sigma comparison meaningless; the floor uses the value being tested.
    """
    return max(math.sqrt(p_hat * (1 - p_hat) / n), math.sqrt(p_ref * (1 - p_ref) / n))


def _unit_cn(rng, n, size):
    z = (rng.standard_normal((size, n)) + 1j * rng.standard_normal((size, n))) * math.sqrt(0.5)
    return z / np.linalg.norm(z, axis=1)[:, None]


def conditional_outage(scheme, params: SystemParams, n_samples=400_000, seed=0):
    """Rare-event outage estimate: conditional Monte Carlo plus importance sampling.

    Given h1 and h_i the second hop is ``K ||h2||^2`` with ``||h2||^2 ~
    Gamma(N)``, so the outage probability conditional on the first hop is a
    gamma cdf (scipy).  ``||h1||^2`` (for ZF its component orthogonal to
    ``h_i``) is drawn from a defensive mixture of
    Gamma(N, scale) laws with scales spread over decades down to the outage
    threshold, and reweighted by the likelihood ratio.

    Returns ``(estimate, standard_error)``.
    """
    scheme = Scheme.parse(scheme)
    p = params
    n = p.n_antennas
    th = p.gamma_th
    rng = np.random.default_rng(seed)
    # ZF outage is driven by the part of h1 orthogonal to h_i, Gamma(N-1)
    zf = scheme is Scheme.ZF_MRT
    shape = n - 1 if zf else n
    decades = max(1, int(math.ceil(math.log10(max(p.info_snr1 / th, 10.0)))) + 1)
    scales = 10.0 ** -np.arange(decades + 1)
    comp = rng.integers(0, scales.size, n_samples)
    g = rng.gamma(shape, scales[comp])
    # likelihood ratio f(g)/q(g), q the equal-weight mixture
    log_ratio = -shape * np.log(scales)[None, :] - g[:, None] * (1.0 / scales[None, :] - 1.0)
    w = 1.0 / np.mean(np.exp(log_ratio), axis=1)
    hi = (rng.standard_normal((n_samples, n)) + 1j * rng.standard_normal((n_samples, n))) * math.sqrt(0.5)
    if zf:
        e = hi / np.linalg.norm(hi, axis=1)[:, None]
        v = (rng.standard_normal((n_samples, n)) + 1j * rng.standard_normal((n_samples, n))) * math.sqrt(0.5)
        v = v - np.sum(e.conj() * v, axis=1)[:, None] * e
        v = v / np.linalg.norm(v, axis=1)[:, None]
        par = (rng.standard_normal(n_samples) + 1j * rng.standard_normal(n_samples)) * math.sqrt(0.5)
        h1 = np.sqrt(g)[:, None] * v + par[:, None] * e
    else:
        h1 = _unit_cn(rng, n, n_samples) * np.sqrt(g)[:, None]
    zeros = np.zeros_like(h1)
    from swipt_relay.model import ChannelDraw
    st = ChannelStats.from_draw(ChannelDraw(h1, zeros, hi))
    gam1 = first_hop_sinr(scheme, st, p)
    power = p.snr1 * st.g1 + (p.snr_i * st.gi if scheme.has_interference else 0.0)
    k = p.eta * p.theta * power / p.loss2
    with np.errstate(divide="ignore", invalid="ignore"):
        thresh = th * (gam1 + 1.0) / ((gam1 - th) * k)
    cond = np.where(gam1 <= th, 1.0, stats.gamma.cdf(np.where(gam1 <= th, 0.0, thresh), n))
    v = w * cond
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(n_samples))


def brute_force_outage_nl(params: SystemParams) -> float:
    """Noise-limited outage by two-dimensional quadrature over the joint
    density of ||h1||^2 and ||h2||^2 (scipy ``dblquad``).

    Outage happens when ``g1 = rt X <= th`` or when ``kappa X Y`` falls below
    ``th (g1 + 1)/(g1 - th)``; the inner integral runs over Y up to that
    boundary.
    """
    p = params
    n = p.n_antennas
    th = p.gamma_th
    rt = p.info_snr1
    kappa = p.eta * p.theta * p.snr1 / p.loss2
    x0 = th / rt
    first = special.gammainc(n, x0)

    def f(y, x):
        return math.exp((n - 1) * (math.log(x) + math.log(y)) - x - y - 2 * math.lgamma(n))

    def ymax(x):
        g1 = rt * x
        # the Gamma(N) mass beyond 200 + N is far below double precision
        return min(th * (g1 + 1.0) / ((g1 - th) * kappa * x), 200.0 + n)

    total = first
    edges = [x0 * (1 + e) for e in (0.0, 1e-9, 1e-7, 1e-5, 1e-3, 1e-2, 0.1, 1.0, 9.0)] + [x0 * 10 + k for k in (1, 3, 8, 20, 60)]
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.dblquad(f, a, b, 0.0, ymax, epsabs=1e-16, epsrel=1e-11)
        total += val
    return total
