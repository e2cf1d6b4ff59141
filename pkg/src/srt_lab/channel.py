"""Rayleigh fading model: scenario constants, channel draws, link predicates.

Every link coefficient is circularly-symmetric complex Gaussian with zero
mean and variance equal to the configured gain, so squared magnitudes are
exponential with that mean.  A source-to-node transmission succeeds when the
Shannon capacity of the link strictly exceeds the data rate; with relaying
the rate is carried over two time slots, which halves the capacity and
raises the power threshold accordingly.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .special import RelayIndexSet


def _as_gain_tuple(name, values, n):
    values = tuple(float(v) for v in values)
    if len(values) != n:
        raise ValueError("%s must have exactly %d entries" % (name, n))
    if any(v <= 0 for v in values):
        raise ValueError("%s entries must be strictly positive" % name)
    return values


@dataclass(frozen=True)
class SystemParams:
    """Scenario constants: linear SNR, rate, relay count, mean link gains.

    gamma is the transmit SNR P/N0 in linear units (dB conversion belongs
    to the CLI).  gains_si, gains_id, gains_ie hold one mean per relay.
    """

    gamma: float
    rate: float
    n_relays: int
    gain_sd: float
    gain_se: float
    gains_si: tuple
    gains_id: tuple
    gains_ie: tuple

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be strictly positive")
        if self.rate <= 0:
            raise ValueError("rate must be strictly positive")
        if self.n_relays < 0:
            raise ValueError("n_relays must be non-negative")
        if self.gain_sd <= 0 or self.gain_se <= 0:
            raise ValueError("gain_sd and gain_se must be strictly positive")
        for name in ("gains_si", "gains_id", "gains_ie"):
            object.__setattr__(
                self, name, _as_gain_tuple(name, getattr(self, name), self.n_relays)
            )

    @property
    def direct_threshold(self) -> float:
        """|h|^2 level a single-slot link must exceed to carry the rate."""
        return (2.0**self.rate - 1.0) / self.gamma

    @property
    def relay_threshold(self) -> float:
        """|h|^2 level a two-slot (half capacity) link must exceed."""
        return (2.0 ** (2.0 * self.rate) - 1.0) / self.gamma

    @classmethod
    def defaults(cls, n_relays: int = 6, gamma: float = 10.0, rate: float = 1.0):
        """Factory configuration: unit main-link gains, 0.1 eavesdropper gains."""
        return cls(
            gamma=gamma,
            rate=rate,
            n_relays=n_relays,
            gain_sd=1.0,
            gain_se=0.1,
            gains_si=(1.0,) * n_relays,
            gains_id=(1.0,) * n_relays,
            gains_ie=(0.1,) * n_relays,
        )

    def with_gamma(self, gamma: float) -> "SystemParams":
        return dataclasses.replace(self, gamma=gamma)

    def with_n_relays(self, n_relays: int) -> "SystemParams":
        """Resize the relay population, replicating homogeneous gains."""
        for name in ("gains_si", "gains_id", "gains_ie"):
            gains = getattr(self, name)
            if gains and len(set(gains)) != 1:
                raise ValueError(
                    "cannot resize %s: per-relay gains are not homogeneous" % name
                )
        def rep(gains):
            return (gains[0] if gains else 1.0,) * n_relays
        return dataclasses.replace(
            self,
            n_relays=n_relays,
            gains_si=rep(self.gains_si),
            gains_id=rep(self.gains_id),
            gains_ie=rep(self.gains_ie),
        )


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of every fading coefficient used by a single trial."""

    h_sd: complex
    h_se: complex
    h_si: np.ndarray
    h_id: np.ndarray
    h_ie: np.ndarray


def draw_realization(params: SystemParams, rng: np.random.Generator) -> ChannelRealization:
    """Draw all 2 + 3N coefficients, independently, in a fixed order."""
    def scalar(gain):
        re, im = rng.standard_normal(2)
        return complex(re, im) * math.sqrt(gain / 2.0)

    def vector(gains):
        n = len(gains)
        re = rng.standard_normal(n)
        im = rng.standard_normal(n)
        return (re + 1j * im) * np.sqrt(np.asarray(gains) / 2.0)

    return ChannelRealization(
        h_sd=scalar(params.gain_sd),
        h_se=scalar(params.gain_se),
        h_si=vector(params.gains_si),
        h_id=vector(params.gains_id),
        h_ie=vector(params.gains_ie),
    )


def decoding_set(real: ChannelRealization, params: SystemParams) -> RelayIndexSet:
    """Relays whose source link sustains the rate over two slots.

    Membership requires 0.5*log2(1 + |h_si|^2 gamma) > rate, i.e.
    |h_si|^2 > relay_threshold, with the boundary counting as not decoded.
    """
    powers = np.abs(real.h_si) ** 2
    members = tuple(int(i) for i in np.flatnonzero(powers > params.relay_threshold))
    return RelayIndexSet(members, params.n_relays)


def capacity_direct(real: ChannelRealization, params: SystemParams):
    """Single-slot capacities (destination, eavesdropper) in bit/s/Hz."""
    c_d = math.log2(1.0 + abs(real.h_sd) ** 2 * params.gamma)
    c_e = math.log2(1.0 + abs(real.h_se) ** 2 * params.gamma)
    return c_d, c_e
