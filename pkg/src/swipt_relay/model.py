"""System parameters and Rayleigh channel generation.

All quantities are normalized to unit noise power, so every power is an SNR
in linear units.  Conversion from dB happens only in the command-line layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import specfun

DEFAULT_RHO_I = 10 ** 0.95   # 9.5 dB


@dataclass(frozen=True)
class SystemParams:
    """One operating point of the relay link.

    Parameters
    ----------
    n_antennas : int
        Number of relay antennas, at least 1.
    eta : float
        Energy conversion efficiency in (0, 1].
    theta : float
        Power-splitting ratio in [0, 1]; the fraction sent to the harvester.
    rho1 : float
        Source transmit SNR (linear, > 0).
    rho_i : float
        Interferer transmit SNR (linear, >= 0).
    d1, d2, d_i : float
        Source-relay, relay-destination and interferer-relay distances.
    tau : float
        Path-loss exponent, >= 0.
    gamma_th : float
        Outage threshold on the end-to-end SINR (linear, > 0).
    """

    n_antennas: int = 2
    eta: float = 0.8
    theta: float = 0.5
    rho1: float = 100.0
    rho_i: float = DEFAULT_RHO_I
    d1: float = 1.0
    d2: float = 1.0
    d_i: float = 1.0
    tau: float = 2.0
    gamma_th: float = 1.0

    def __post_init__(self):
        n = self.n_antennas
        if isinstance(n, bool) or not float(n).is_integer() or n < 1:
            raise ValueError(f"n_antennas must be an integer >= 1, got {n!r}")
        object.__setattr__(self, "n_antennas", int(n))
        for f in fields(self):
            if f.name == "n_antennas":
                continue
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ValueError(f"{f.name} must be a finite number, got {v!r}")
            object.__setattr__(self, f.name, float(v))
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must lie in (0, 1], got {self.eta}")
        if not 0 <= self.theta <= 1:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")
        if not self.rho1 > 0:
            raise ValueError(f"rho1 must be positive, got {self.rho1}")
        if not self.rho_i >= 0:
            raise ValueError(f"rho_i must be nonnegative, got {self.rho_i}")
        for name in ("d1", "d2", "d_i"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.tau >= 0:
            raise ValueError(f"tau must be nonnegative, got {self.tau}")
        if not self.gamma_th > 0:
            raise ValueError(f"gamma_th must be positive, got {self.gamma_th}")

    def with_(self, **changes) -> "SystemParams":
        """Copy with some fields replaced (validated again)."""
        return replace(self, **changes)

    # path-loss factors d^tau
    @property
    def loss1(self) -> float:
        return self.d1 ** self.tau

    @property
    def loss2(self) -> float:
        return self.d2 ** self.tau

    @property
    def loss_i(self) -> float:
        return self.d_i ** self.tau

    @property
    def snr1(self) -> float:
        """Received source SNR per unit channel gain, rho1 / d1^tau."""
        return self.rho1 / self.loss1

    @property
    def snr_i(self) -> float:
        """Received interference SNR per unit channel gain, rho_i / d_i^tau."""
        return self.rho_i / self.loss_i

    @property
    def info_snr1(self) -> float:
        """Source SNR left for decoding after the splitter, (1-theta) rho1 / d1^tau."""
        return (1.0 - self.theta) * self.snr1

    @property
    def info_snr_i(self) -> float:
        """Interference SNR on the decoding branch."""
        return (1.0 - self.theta) * self.snr_i


@dataclass(frozen=True)
class ChannelDraw:
    """A batch of channel realizations.

    Each array has shape ``(n, N)``: row ``k`` is one realization of the
    source-relay, relay-destination and interferer-relay vectors.
    """

    h1: np.ndarray
    h2: np.ndarray
    h_i: np.ndarray

    def __len__(self):
        return self.h1.shape[0]

    @classmethod
    def single(cls, h1, h2, h_i) -> "ChannelDraw":
        """Wrap one realization given as three length-N vectors."""
        def row(v):
            return np.atleast_1d(np.asarray(v, dtype=complex))[None, :]
        return cls(row(h1), row(h2), row(h_i))


@dataclass
class RngStream:
    """Seeded random stream; ``(seed, stream_id)`` fixes the whole sequence."""

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        self.generator = np.random.Generator(np.random.PCG64(ss))


def _cn01(gen: np.random.Generator, shape) -> np.ndarray:
    # circularly-symmetric complex Gaussian, variance 1/2 per component
    z = gen.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def draw_channels(params: SystemParams, rng: RngStream, size: int = 1) -> ChannelDraw:
    """Draw ``size`` independent realizations of the three channel vectors.

    Entries are i.i.d. CN(0, 1), so each squared norm is Gamma(N, 1).
    """
    shape = (int(size), params.n_antennas)
    g = rng.generator
    return ChannelDraw(_cn01(g, shape), _cn01(g, shape), _cn01(g, shape))


def gamma_cdf(n: int, x: float) -> float:
    """Cdf of the squared norm of an n-vector of CN(0,1) entries.

    Equals ``1 - Gamma(n, x)/Gamma(n)``; computed as the regularized lower
    incomplete gamma so small tail probabilities keep full relative accuracy.
    """
    if n < 1:
        raise ValueError("shape n must be >= 1")
    if x <= 0:
        return 0.0
    return specfun.reg_lower_gamma(float(n), float(x))


def gamma_ccdf(n: int, x: float) -> float:
    """Complement of :func:`gamma_cdf`, accurate in the upper tail."""
    if x <= 0:
        return 1.0
    return specfun.reg_upper_gamma(float(n), float(x))
