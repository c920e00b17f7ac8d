"""Seeded Monte Carlo estimates of outage probability and ergodic capacity.

Draws are generated in fixed-size chunks; chunk ``k`` always uses the
substream ``RngStream(seed, k)``.  Each chunk is reduced to exact integer
counts or to a (count, mean, M2) triple, and the partial results are merged
in chunk order, so the estimate does not depend on how many worker threads
processed the chunks.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import RngStream, SystemParams, draw_channels
from .schemes import ChannelStats, Scheme, check_supported, sinr_from_stats

CHUNK_SIZE = 1 << 16
MIN_SAMPLES = 1000


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo estimate and its standard error."""

    mean: float
    std_error: float
    n_samples: int
    seed: int
    scheme: Scheme

    def within(self, reference: float, k: float = 3.0) -> bool:
        """True if ``reference`` lies within ``k`` standard errors."""
        return abs(self.mean - reference) <= k * self.std_error


def _chunks(n_samples: int):
    full, rest = divmod(int(n_samples), CHUNK_SIZE)
    sizes = [CHUNK_SIZE] * full + ([rest] if rest else [])
    return list(enumerate(sizes))


def _check_n(n_samples: int):
    if n_samples < MIN_SAMPLES:
        raise ValueError(f"n_samples must be at least {MIN_SAMPLES}, got {n_samples}")


def map_chunks(params: SystemParams, n_samples: int, seed: int, fn, workers: int = 1) -> list:
    """Apply ``fn(stats)`` to every chunk of channel draws; results in chunk order.

    The draws depend only on ``(seed, chunk index, n_antennas)``, so calls
    with different ``theta``, SNRs or schemes see common random numbers.
    """
    def one(item):
        k, size = item
        draw = draw_channels(params, RngStream(seed, k), size)
        return fn(ChannelStats.from_draw(draw))

    items = _chunks(n_samples)
    if workers <= 1:
        return [one(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(one, items))


def _binomial(count: int, n: int, seed: int, scheme: Scheme) -> McEstimate:
    p = count / n
    return McEstimate(p, math.sqrt(p * (1.0 - p) / n), n, seed, scheme)


def _merge_moments(parts) -> tuple:
    # Chan et al. pairwise update, applied in a fixed order
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        if nb == 0:
            continue
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def _moments(x: np.ndarray) -> tuple:
    n = x.size
    mean = math.fsum(x) / n
    return n, mean, math.fsum((x - mean) ** 2)


def estimate_outage(scheme, params: SystemParams, n_samples: int = 10 ** 6, seed: int = 0,
                    workers: int = 1) -> McEstimate:
    """Fraction of draws whose end-to-end SINR is below ``gamma_th``.

    Examples
    --------
    >>> from swipt_relay.model import SystemParams
    >>> estimate_outage("nl", SystemParams(theta=0.0), 1000).mean
    1.0
    """
    scheme = Scheme.parse(scheme)
    check_supported(scheme, params)
    _check_n(n_samples)
    th = params.gamma_th

    def count(stats):
        return int(np.count_nonzero(sinr_from_stats(scheme, stats, params).gamma_e2e < th))

    total = sum(map_chunks(params, n_samples, seed, count, workers))
    return _binomial(total, n_samples, seed, scheme)


def estimate_capacity(scheme, params: SystemParams, n_samples: int = 10 ** 6, seed: int = 0,
                      workers: int = 1) -> McEstimate:
    """Sample mean of ``log2(1 + gamma_e2e)/2`` with its standard error."""
    scheme = Scheme.parse(scheme)
    check_supported(scheme, params)
    _check_n(n_samples)

    def moments(stats):
        return _moments(0.5 * np.log2(1.0 + sinr_from_stats(scheme, stats, params).gamma_e2e))

    n, mean, m2 = _merge_moments(map_chunks(params, n_samples, seed, moments, workers))
    sd = math.sqrt(m2 / (n - 1)) if n > 1 else 0.0
    return McEstimate(mean, sd / math.sqrt(n), n, seed, scheme)


def estimate_outage_shared(schemes, params: SystemParams, n_samples: int = 10 ** 6, seed: int = 0,
                           workers: int = 1) -> dict:
    """Outage of several schemes evaluated on the same channel draws."""
    schemes = [Scheme.parse(s) for s in schemes]
    for s in schemes:
        check_supported(s, params)
    _check_n(n_samples)
    th = params.gamma_th

    def counts(stats):
        return [int(np.count_nonzero(sinr_from_stats(s, stats, params).gamma_e2e < th)) for s in schemes]

    parts = map_chunks(params, n_samples, seed, counts, workers)
    totals = [sum(p[i] for p in parts) for i in range(len(schemes))]
    return {s: _binomial(c, n_samples, seed, s) for s, c in zip(schemes, totals)}


def estimate_outage_grid(scheme, params_list, n_samples: int = 10 ** 6, seed: int = 0,
                         workers: int = 1) -> list:
    """Outage of one scheme at several parameter points on shared draws.

    All points must have the same antenna count; typical use is a sweep of
    ``theta`` with common random numbers.
    """
    scheme = Scheme.parse(scheme)
    params_list = list(params_list)
    if not params_list:
        return []
    n_ant = {p.n_antennas for p in params_list}
    if len(n_ant) != 1:
        raise ValueError("all parameter points must share n_antennas")
    for p in params_list:
        check_supported(scheme, p)
    _check_n(n_samples)

    def counts(stats):
        return [int(np.count_nonzero(sinr_from_stats(scheme, stats, p).gamma_e2e < p.gamma_th))
                for p in params_list]

    parts = map_chunks(params_list[0], n_samples, seed, counts, workers)
    return [_binomial(sum(q[i] for q in parts), n_samples, seed, scheme) for i in range(len(params_list))]
