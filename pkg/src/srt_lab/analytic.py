"""Closed-form and semi-analytic outage/intercept evaluators.

Outage probability (op) is the chance the legitimate destination cannot
sustain the data rate; intercept probability (ip) is the chance the
eavesdropper can.  Direct transmission admits plain exponential tails.
The relay-selection schemes condition on the decoding set, the random
subset of relays whose source link supports the (half-rate) relayed
transmission, and weight per-set conditional probabilities by the exact
product-form probability of that set.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channel import SystemParams
from .special import (
    RelayIndexSet,
    best_relay_eve_exceedance,
    enumerate_nonempty_subsets,
    regularized_lower_gamma,
)


class Scheme(str, enum.Enum):
    DIRECT = "direct"
    SINGLE_RELAY = "single"
    MULTI_RELAY = "multi"


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    SEMI_ANALYTIC = "semi-analytic"
    MONTE_CARLO = "monte-carlo"


class UnsupportedConfigurationError(ValueError):
    """Closed form not available for this configuration; use Monte Carlo."""


@dataclass(frozen=True)
class SrtPoint:
    """One (outage, intercept) pair with the method that produced it."""

    scheme: Scheme
    op: float
    ip: float
    method: Method
    op_stderr: Optional[float] = None
    ip_stderr: Optional[float] = None

    def __post_init__(self):
        for name in ("op", "ip"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError("%s must lie in [0, 1], got %r" % (name, v))
        has_err = self.op_stderr is not None and self.ip_stderr is not None
        if self.method is Method.ANALYTIC:
            if self.op_stderr is not None or self.ip_stderr is not None:
                raise ValueError("analytic points carry no standard errors")
        elif not has_err:
            raise ValueError("%s points require standard errors" % self.method.value)
        for name in ("op_stderr", "ip_stderr"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError("%s must be non-negative" % name)


def op_direct(params: SystemParams) -> float:
    """Pr(direct link capacity below the rate) = 1 - exp(-delta/gain_sd)."""
    return -math.expm1(-params.direct_threshold / params.gain_sd)


def ip_direct(params: SystemParams) -> float:
    """Pr(eavesdropper capacity above the rate) = exp(-delta/gain_se)."""
    return math.exp(-params.direct_threshold / params.gain_se)


def decoding_set_probability(dn: RelayIndexSet, params: SystemParams) -> float:
    """Probability that exactly the relays in dn decode the source signal.

    Product of exp(-threshold/gain) over members and 1 - exp(-threshold/gain)
    over non-members.  Accumulated in log space and exponentiated once so the
    product survives relay counts near the enumeration cap.
    """
    if dn.n_relays != params.n_relays:
        raise ValueError("dn is indexed over %d relays, params has %d"
                         % (dn.n_relays, params.n_relays))
    thr = params.relay_threshold
    inside = set(dn.members)
    log_p = 0.0
    for i in range(params.n_relays):
        x = thr / params.gains_si[i]
        if i in inside:
            log_p += -x
        else:
            miss = -math.expm1(-x)
            if miss == 0.0:
                return 0.0
            log_p += math.log(miss)
    return math.exp(log_p)


def _require_relays(params: SystemParams):
    if params.n_relays < 1:
        raise ValueError("relay schemes require n_relays >= 1")


def op_single(params: SystemParams) -> float:
    """Outage probability of best-relay selection.

    The empty decoding set is an outage; otherwise the selected relay fails
    only if every decoding relay's destination link sits below the threshold.
    """
    _require_relays(params)
    thr = params.relay_threshold
    total = decoding_set_probability(RelayIndexSet((), params.n_relays), params)
    for dn in enumerate_nonempty_subsets(params.n_relays):
        w = decoding_set_probability(dn, params)
        if w == 0.0:
            continue
        log_miss = 0.0
        for i in dn:
            miss = -math.expm1(-thr / params.gains_id[i])
            if miss == 0.0:
                log_miss = None
                break
            log_miss += math.log(miss)
        if log_miss is not None:
            total += w * math.exp(log_miss)
    return min(total, 1.0)


def ip_single(params: SystemParams) -> float:
    """Intercept probability of best-relay selection.

    Weights the exceedance probability of the winning relay's eavesdropper
    link by the decoding-set probability; the empty set contributes nothing
    because no relay retransmits.
    """
    _require_relays(params)
    thr = params.relay_threshold
    total = 0.0
    for dn in enumerate_nonempty_subsets(params.n_relays):
        w = decoding_set_probability(dn, params)
        if w == 0.0:
            continue
        total += w * best_relay_eve_exceedance(
            dn, params.gains_id, params.gains_ie, thr
        )
    return min(total, 1.0)


def op_multi(params: SystemParams) -> float:
    """Outage probability of combining every decoding relay coherently.

    The destination then sees the sum of the decoding relays' link powers,
    an Erlang variable when the relay-destination gains are identical, so
    each per-set factor is the regularized lower gamma at |dn| degrees.
    """
    _require_relays(params)
    if len(set(params.gains_id)) != 1:
        raise UnsupportedConfigurationError(
            "closed-form multi-relay outage requires identical gains_id; "
            "use the Monte Carlo estimator for unequal gains"
        )
    sigma = params.gains_id[0]
    x = params.relay_threshold / sigma
    total = decoding_set_probability(RelayIndexSet((), params.n_relays), params)
    for dn in enumerate_nonempty_subsets(params.n_relays):
        w = decoding_set_probability(dn, params)
        if w == 0.0:
            continue
        total += w * regularized_lower_gamma(x, dn.cardinality())
    return min(total, 1.0)


def ip_multi(
    params: SystemParams, inner_trials: int, rng: np.random.Generator
) -> Tuple[float, float]:
    """Semi-analytic intercept probability of coherent multi-relay combining.

    Decoding-set weights are exact.  The per-set probability that the
    eavesdropper's projected power |h_d^H h_e|^2 / |h_d|^2 exceeds the
    threshold has no known closed form for two or more relays and is
    estimated with inner_trials fresh draws; a singleton set collapses to
    the lone relay's exponential tail and is taken exactly.  Returns the
    weighted sum and the propagated standard error
    sqrt(sum_n w_n^2 var_n), exact weights contributing no variance.
    """
    _require_relays(params)
    if inner_trials < 1000:
        raise ValueError("inner_trials must be at least 1000")
    thr = params.relay_threshold
    value = 0.0
    variance = 0.0
    for dn in enumerate_nonempty_subsets(params.n_relays):
        w = decoding_set_probability(dn, params)
        if w == 0.0:
            continue
        k = dn.cardinality()
        if k == 1:
            value += w * math.exp(-thr / params.gains_ie[dn.members[0]])
            continue
        gid = np.array([params.gains_id[i] for i in dn])
        gie = np.array([params.gains_ie[i] for i in dn])
        h_d = _complex_matrix(rng, inner_trials, gid)
        h_e = _complex_matrix(rng, inner_trials, gie)
        num = np.abs(np.sum(np.conj(h_d) * h_e, axis=1)) ** 2
        den = np.sum(np.abs(h_d) ** 2, axis=1)
        q = float(np.count_nonzero(num > thr * den)) / inner_trials
        value += w * q
        variance += w * w * q * (1.0 - q) / inner_trials
    return min(value, 1.0), math.sqrt(variance)


def _complex_matrix(rng, m, gains):
    re = rng.standard_normal((m, len(gains)))
    im = rng.standard_normal((m, len(gains)))
    return (re + 1j * im) * np.sqrt(gains / 2.0)
