"""Per-draw SINRs for the noise-limited link and the three relay processing
schemes used under co-channel interference.

All functions work on a batch of draws and return arrays.  The first-hop
SINR depends on the combining vector at the relay; the second hop always
uses maximum ratio transmission, so its SNR only depends on the harvested
power.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SchemeUnsupported
from .model import ChannelDraw, SystemParams


class Scheme(str, enum.Enum):
    """Relay processing strategy."""

    NOISE_LIMITED = "nl"
    MRC_MRT = "mrc"
    ZF_MRT = "zf"
    MMSE_MRT = "mmse"

    @property
    def has_interference(self) -> bool:
        return self is not Scheme.NOISE_LIMITED

    @property
    def label(self) -> str:
        return {"nl": "noise-limited", "mrc": "MRC/MRT", "zf": "ZF/MRT", "mmse": "MMSE/MRT"}[self.value]

    @classmethod
    def parse(cls, text: "str | Scheme") -> "Scheme":
        if isinstance(text, Scheme):
            return text
        key = str(text).strip().lower().replace("_", "-").replace("/", "-")
        aliases = {"nl": "nl", "noise-limited": "nl", "noiselimited": "nl",
                   "mrc": "mrc", "mrc-mrt": "mrc", "mrcmrt": "mrc",
                   "zf": "zf", "zf-mrt": "zf", "zfmrt": "zf",
                   "mmse": "mmse", "mmse-mrt": "mmse", "mmsemrt": "mmse"}
        if key not in aliases:
            raise ValueError(f"unknown scheme {text!r}; choose from nl, mrc, zf, mmse")
        return cls(aliases[key])


CCI_SCHEMES = (Scheme.MRC_MRT, Scheme.ZF_MRT, Scheme.MMSE_MRT)


def check_supported(scheme: Scheme, params: SystemParams) -> None:
    """Raise :class:`SchemeUnsupported` for ZF with a single antenna."""
    if scheme is Scheme.ZF_MRT and params.n_antennas < 2:
        raise SchemeUnsupported("ZF/MRT needs at least two relay antennas")


@dataclass(frozen=True)
class SinrDecomposition:
    """First-hop SINR, second-hop SNR and the end-to-end SINR of each draw."""

    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma_e2e: np.ndarray


@dataclass(frozen=True)
class RelayWeights:
    """Receive combiner ``w1`` (length N) and the power scaling ``omega_sq``
    of the relay matrix ``omega * h2^H w1 / ||h2||`` for one draw."""

    w1: np.ndarray
    omega_sq: float


def end_to_end(g1, g2):
    """Dual-hop AF combination g1*g2/(g1 + g2 + 1)."""
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    return g1 * g2 / (g1 + g2 + 1.0)


@dataclass(frozen=True)
class ChannelStats:
    """Scheme-independent statistics of a batch of draws.

    Attributes
    ----------
    g1, g2, gi : ndarray
        Squared norms of h1, h2 and h_i.
    cross : ndarray
        ``|h1^H h_i|^2``.
    zf_residual : ndarray
        Squared norm of h1 after projecting out the direction of h_i.
    """

    g1: np.ndarray
    g2: np.ndarray
    gi: np.ndarray
    cross: np.ndarray
    zf_residual: np.ndarray

    @classmethod
    def from_draw(cls, draw: ChannelDraw) -> "ChannelStats":
        h1, h2, hi = draw.h1, draw.h2, draw.h_i
        g1 = np.einsum("ij,ij->i", h1.real, h1.real) + np.einsum("ij,ij->i", h1.imag, h1.imag)
        g2 = np.einsum("ij,ij->i", h2.real, h2.real) + np.einsum("ij,ij->i", h2.imag, h2.imag)
        gi = np.einsum("ij,ij->i", hi.real, hi.real) + np.einsum("ij,ij->i", hi.imag, hi.imag)
        c = np.einsum("ij,ij->i", np.conj(hi), h1)          # h_i^H h1
        cross = c.real ** 2 + c.imag ** 2
        # explicit projection keeps the residual accurate when h1 is nearly parallel to h_i
        with np.errstate(invalid="ignore", divide="ignore"):
            v = h1 - hi * (c / gi)[:, None]
        res = np.einsum("ij,ij->i", v.real, v.real) + np.einsum("ij,ij->i", v.imag, v.imag)
        return cls(g1, g2, gi, cross, res)


def _relay_power(stats: ChannelStats, params: SystemParams, with_cci: bool):
    p = params.snr1 * stats.g1
    if with_cci:
        p = p + params.snr_i * stats.gi
    return params.eta * params.theta * p


def second_hop_snr(stats: ChannelStats, params: SystemParams, with_cci: bool):
    """SNR at the destination when the relay forwards with its harvested power."""
    return _relay_power(stats, params, with_cci) * stats.g2 / params.loss2


def first_hop_sinr(scheme: Scheme, stats: ChannelStats, params: SystemParams):
    """First-hop SINR of ``scheme`` from precomputed channel statistics."""
    rt = params.info_snr1
    ri = params.info_snr_i
    if scheme is Scheme.NOISE_LIMITED:
        return rt * stats.g1
    if scheme is Scheme.ZF_MRT:
        check_supported(scheme, params)
        if params.rho_i == 0:
            warnings.warn("ZF/MRT without an interferer falls back to MRC/MRT combining",
                          RuntimeWarning, stacklevel=3)
            return rt * stats.g1
        return rt * stats.zf_residual
    if scheme is Scheme.MRC_MRT:
        with np.errstate(invalid="ignore", divide="ignore"):
            leak = np.where(stats.g1 > 0, stats.cross / stats.g1, 0.0)
        return rt * stats.g1 / (ri * leak + 1.0)
    if scheme is Scheme.MMSE_MRT:
        # h1^H R^-1 h1 with R = h_i h_i^H + I/ri, by Sherman-Morrison:
        # ||P h1||^2 + |h_i^H h1|^2 / (g_i (1 + ri g_i))
        with np.errstate(invalid="ignore", divide="ignore"):
            aligned = np.where(stats.gi > 0, stats.cross / (stats.gi * (1.0 + ri * stats.gi)), 0.0)
        return rt * (stats.zf_residual + aligned)
    raise ValueError(f"unknown scheme {scheme!r}")


def sinr_from_stats(scheme: Scheme, stats: ChannelStats, params: SystemParams) -> SinrDecomposition:
    scheme = Scheme.parse(scheme)
    g1 = first_hop_sinr(scheme, stats, params)
    g2 = second_hop_snr(stats, params, scheme.has_interference)
    return SinrDecomposition(g1, g2, end_to_end(g1, g2))


def harvested_relay_power(draw: ChannelDraw, params: SystemParams, with_cci: bool):
    """Relay transmit power (over the noise floor) harvested in the first phase.

    ``eta * theta * (rho1 ||h1||^2 / d1^tau + [with_cci] rho_i ||h_i||^2 / d_i^tau)``
    """
    return _relay_power(ChannelStats.from_draw(draw), params, with_cci)


def sinr_noise_limited(draw: ChannelDraw, params: SystemParams) -> SinrDecomposition:
    """SINRs without an interferer, MRC at the relay input and MRT at its output."""
    return sinr_from_stats(Scheme.NOISE_LIMITED, ChannelStats.from_draw(draw), params)


def sinr_mrc_mrt(draw: ChannelDraw, params: SystemParams) -> SinrDecomposition:
    """MRC combining; the interferer leaks in through ``|h1^H h_i|^2 / ||h1||^2``."""
    return sinr_from_stats(Scheme.MRC_MRT, ChannelStats.from_draw(draw), params)


def sinr_zf_mrt(draw: ChannelDraw, params: SystemParams) -> SinrDecomposition:
    """ZF combining: h1 projected onto the orthogonal complement of h_i.

    Needs N > 1.  With ``rho_i == 0`` there is nothing to null, and MRC
    combining is used instead (a ``RuntimeWarning`` is issued).
    """
    return sinr_from_stats(Scheme.ZF_MRT, ChannelStats.from_draw(draw), params)


def sinr_mmse_mrt(draw: ChannelDraw, params: SystemParams) -> SinrDecomposition:
    """MMSE combining, the SINR-maximizing linear receiver.

    The inverse of the rank-one-plus-identity covariance is applied with the
    Sherman-Morrison identity.  At ``rho_i == 0`` this reduces to the
    noise-limited first hop.
    """
    return sinr_from_stats(Scheme.MMSE_MRT, ChannelStats.from_draw(draw), params)


_DISPATCH = {
    Scheme.NOISE_LIMITED: sinr_noise_limited,
    Scheme.MRC_MRT: sinr_mrc_mrt,
    Scheme.ZF_MRT: sinr_zf_mrt,
    Scheme.MMSE_MRT: sinr_mmse_mrt,
}


def sinr(scheme, draw: ChannelDraw, params: SystemParams) -> SinrDecomposition:
    """Dispatch to the SINR function of ``scheme``."""
    return _DISPATCH[Scheme.parse(scheme)](draw, params)


def relay_weights(scheme, draw: ChannelDraw, params: SystemParams, index: int = 0) -> RelayWeights:
    """Combining vector and power scaling for one draw of the batch.

    This assembles what the closed SINR formulas avoid: the receive combiner
    (unit norm) and ``omega^2 = P_r / E|w1 y_r|^2`` so that the relay meets its
    harvested power budget.
    """
    scheme = Scheme.parse(scheme)
    check_supported(scheme, params)
    h1 = draw.h1[index]
    hi = draw.h_i[index]
    rt, ri = params.info_snr1, params.info_snr_i
    if scheme in (Scheme.NOISE_LIMITED, Scheme.MRC_MRT) or (scheme is Scheme.ZF_MRT and params.rho_i == 0):
        w = np.conj(h1)
    elif scheme is Scheme.ZF_MRT:
        gi = np.vdot(hi, hi).real
        w = np.conj(h1 - hi * (np.vdot(hi, h1) / gi))
    else:
        gi = np.vdot(hi, hi).real
        # h1^H R^-1 up to a positive scale, R^-1 proportional to I - ri h_i h_i^H / (1 + ri g_i)
        w = np.conj(h1 - hi * (ri * np.vdot(hi, h1) / (1.0 + ri * gi)))
    w = w / np.linalg.norm(w)
    with_cci = scheme.has_interference
    pr = float(harvested_relay_power(ChannelDraw(draw.h1[index:index + 1], draw.h2[index:index + 1],
                                                 draw.h_i[index:index + 1]), params, with_cci)[0])
    load = rt * abs(w @ h1) ** 2 + (ri * abs(w @ hi) ** 2 if with_cci else 0.0) + np.vdot(w, w).real
    return RelayWeights(w, pr / load)
