"""Full-protocol Monte Carlo simulation of the three transmission schemes.

Outage and intercept are measured on the same realization, which matches
the joint channel model and halves the sampling cost without touching the
marginal probabilities.  Trials are partitioned into fixed-size index
ranges; each range owns a substream seeded by (seed, range start), so the
result is a pure function of (scheme, params, trials, seed) no matter how
the ranges are scheduled across workers.  Worker count is capped by the
SRT_LAB_THREADS environment variable.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import Scheme
from .channel import ChannelRealization, SystemParams, decoding_set

BLOCK_SIZE = 65536


@dataclass(frozen=True)
class McEstimate:
    trials: int
    successes: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)


def trial_direct(real: ChannelRealization, params: SystemParams):
    """(outage, intercept) of one direct transmission."""
    thr = params.direct_threshold
    outage = not (abs(real.h_sd) ** 2 > thr)
    intercept = abs(real.h_se) ** 2 > thr
    return bool(outage), bool(intercept)


def trial_single(real: ChannelRealization, params: SystemParams):
    """(outage, intercept) of one best-relay-selection transmission.

    An empty decoding set silences the second hop, so the destination is in
    outage and the eavesdropper hears nothing.  Otherwise the relay with the
    largest destination-link gain retransmits (lowest index on an exact tie)
    and both events compare that relay's links against the two-slot
    threshold, ties failing.
    """
    ds = decoding_set(real, params)
    if ds.cardinality() == 0:
        return True, False
    members = np.asarray(ds.members)
    link = np.abs(real.h_id[members]) ** 2
    best = members[int(np.argmax(link))]
    thr = params.relay_threshold
    outage = not (abs(real.h_id[best]) ** 2 > thr)
    intercept = abs(real.h_ie[best]) ** 2 > thr
    return bool(outage), bool(intercept)


def trial_multi(real: ChannelRealization, params: SystemParams):
    """(outage, intercept) of one coherently-combined transmission.

    Every decoding relay transmits with the matched weight vector, giving
    the destination the summed link power and the eavesdropper the power of
    h_e projected onto the h_d direction.
    """
    ds = decoding_set(real, params)
    if ds.cardinality() == 0:
        return True, False
    members = np.asarray(ds.members)
    h_d = real.h_id[members]
    h_e = real.h_ie[members]
    thr = params.relay_threshold
    total = float(np.sum(np.abs(h_d) ** 2))
    proj = abs(np.sum(np.conj(h_d) * h_e)) ** 2
    outage = not (total > thr)
    intercept = proj > thr * total
    return bool(outage), bool(intercept)


def estimate(scheme: Scheme, params: SystemParams, trials: int, seed: int):
    """Simulate `trials` independent transmissions, returning (op, ip).

    Deterministic given (scheme, params, trials, seed): the trial block
    [start, stop) always draws from SeedSequence((seed, start)) and block
    counts are integers, so the totals cannot depend on scheduling.
    """
    scheme = Scheme(scheme)
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must fit in 64 bits")
    if scheme is not Scheme.DIRECT and params.n_relays < 1:
        raise ValueError("relay schemes require n_relays >= 1")

    starts = range(0, trials, BLOCK_SIZE)

    def run_block(start):
        stop = min(start + BLOCK_SIZE, trials)
        arrays = _draw_block(scheme, params, seed, start, stop)
        outage, intercept = _eval_block(scheme, params, arrays)
        return int(np.count_nonzero(outage)), int(np.count_nonzero(intercept))

    workers = _worker_count()
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run_block, starts))
    else:
        counts = [run_block(s) for s in starts]

    op_count = sum(c[0] for c in counts)
    ip_count = sum(c[1] for c in counts)
    return McEstimate(trials, op_count), McEstimate(trials, ip_count)


def _worker_count() -> int:
    raw = os.environ.get("SRT_LAB_THREADS")
    if raw is None:
        return 1
    try:
        workers = int(raw)
    except ValueError:
        workers = 0
    if workers < 1:
        raise ValueError("SRT_LAB_THREADS must be a positive integer")
    return workers


def _draw_block(scheme, params, seed, start, stop):
    """Coefficient arrays for trials [start, stop), in a fixed draw order."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), int(start))))
    m = stop - start

    def cols(gains):
        n = len(gains)
        re = rng.standard_normal((m, n))
        im = rng.standard_normal((m, n))
        return (re + 1j * im) * np.sqrt(np.asarray(gains) / 2.0)

    if scheme is Scheme.DIRECT:
        flat = cols((params.gain_sd, params.gain_se))
        return {"h_sd": flat[:, 0], "h_se": flat[:, 1]}
    return {
        "h_si": cols(params.gains_si),
        "h_id": cols(params.gains_id),
        "h_ie": cols(params.gains_ie),
    }


def _eval_block(scheme, params, arrays):
    """Vectorized per-trial predicates; must agree with trial_* exactly."""
    if scheme is Scheme.DIRECT:
        thr = params.direct_threshold
        outage = ~(np.abs(arrays["h_sd"]) ** 2 > thr)
        intercept = np.abs(arrays["h_se"]) ** 2 > thr
        return outage, intercept

    thr = params.relay_threshold
    decoded = np.abs(arrays["h_si"]) ** 2 > thr
    nonempty = decoded.any(axis=1)
    gid2 = np.abs(arrays["h_id"]) ** 2

    if scheme is Scheme.SINGLE_RELAY:
        # sentinel below any admissible power; argmax picks lowest index on ties
        masked = np.where(decoded, gid2, -1.0)
        best = masked.argmax(axis=1)
        rows = np.arange(gid2.shape[0])
        outage = ~(nonempty & (gid2[rows, best] > thr))
        intercept = nonempty & (np.abs(arrays["h_ie"][rows, best]) ** 2 > thr)
        return outage, intercept

    total = np.sum(gid2, axis=1, where=decoded)
    proj = (
        np.abs(np.sum(np.conj(arrays["h_id"]) * arrays["h_ie"], axis=1, where=decoded))
        ** 2
    )
    outage = ~(nonempty & (total > thr))
    intercept = nonempty & (proj > thr * total)
    return outage, intercept
