"""Special functions and subset algebra for the closed-form evaluators.

Provides:
    * regularized_lower_gamma: Erlang CDF, the integer-shape regularized
      lower incomplete gamma function.
    * enumerate_nonempty_subsets: deterministic power-set walk over relay
      indices.
    * best_relay_eve_exceedance: tail probability of the eavesdropper link
      of the relay that wins the max-gain selection, by total probability
      over which relay wins.
"""

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

# 2^20 subsets is the largest enumeration the closed forms will attempt.
SUBSET_ENUMERATION_CAP = 20


class SubsetCapacityError(ValueError):
    """Power-set enumeration refused because 2^N would be prohibitive."""


@dataclass(frozen=True)
class RelayIndexSet:
    """Duplicate-free, ascending subset of relay indices out of n_relays."""

    members: tuple
    n_relays: int

    def __post_init__(self):
        members = tuple(int(i) for i in self.members)
        object.__setattr__(self, "members", members)
        if self.n_relays < 0:
            raise ValueError("n_relays must be non-negative")
        if list(members) != sorted(set(members)):
            raise ValueError("members must be unique and sorted ascending")
        if members and not (0 <= members[0] and members[-1] < self.n_relays):
            raise ValueError("members must lie in [0, %d)" % self.n_relays)

    def cardinality(self) -> int:
        return len(self.members)

    def complement(self) -> "RelayIndexSet":
        inside = set(self.members)
        outside = tuple(i for i in range(self.n_relays) if i not in inside)
        return RelayIndexSet(outside, self.n_relays)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index) -> bool:
        return index in self.members


def enumerate_nonempty_subsets(n_relays: int, cap: int = SUBSET_ENUMERATION_CAP):
    """Yield all 2^N - 1 non-empty RelayIndexSets in bitmask order.

    Mask m maps to { i : bit i of m set }, so the order is deterministic
    and lexicographic by bitmask: {0}, {1}, {0,1}, {2}, ...
    """
    if n_relays < 1:
        raise ValueError("n_relays must be at least 1")
    if n_relays > cap:
        raise SubsetCapacityError(
            "enumerating 2**%d - 1 = %d subsets exceeds the %d-relay cap"
            % (n_relays, 2**n_relays - 1, cap)
        )
    for mask in range(1, 1 << n_relays):
        members = tuple(i for i in range(n_relays) if mask >> i & 1)
        yield RelayIndexSet(members, n_relays)


def regularized_lower_gamma(x: float, k: int) -> float:
    """CDF at x of a sum of k independent unit-mean exponentials.

    For integer shape k this is 1 - exp(-x) * sum_{j<k} x^j / j!, the
    complement of the Poisson(x) mass below k.  The small-x branch sums
    the Poisson tail sum_{j>=k} exp(-x) x^j / j! instead, which is the
    same quantity without the catastrophic cancellation near zero.
    """
    if k < 1 or int(k) != k:
        raise ValueError("shape k must be a positive integer")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        return 0.0
    if k == 1:
        return -math.expm1(-x)
    if x >= k:
        # head terms are well separated from 1 here, no cancellation
        term = 1.0
        head = 1.0
        for j in range(1, k):
            term *= x / j
            head += term
        return 1.0 - math.exp(-x) * head
    # Poisson tail, all terms positive
    term = math.exp(k * math.log(x) - x - math.lgamma(k + 1))
    total = term
    j = k
    while term > total * 1e-17 and j < 100000:
        j += 1
        term *= x / j
        total += term
    return min(total, 1.0)


def best_relay_eve_exceedance(
    dn: RelayIndexSet,
    gains_id: Sequence[float],
    gains_ie: Sequence[float],
    threshold: float,
) -> float:
    """Pr(|h_be|^2 > threshold) for the max-|h_id|^2 relay b of the set dn.

    Conditions on which member wins the selection:

        sum_{i in dn} exp(-threshold / gains_ie[i]) * Pr(i wins)

    where Pr(i wins) = Pr(max_{j in dn, j != i} |h_jd|^2 < |h_id|^2) expands
    by inclusion-exclusion over the rival subsets C of dn minus {i}:

        1 + sum_{C != {}} (-1)^|C| / (1 + sum_{j in C} gains_id[i]/gains_id[j])
    """
    if dn.cardinality() == 0:
        raise ValueError("decoding set must be non-empty")
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    for name, gains in (("gains_id", gains_id), ("gains_ie", gains_ie)):
        if len(gains) != dn.n_relays:
            raise ValueError("%s must have %d entries" % (name, dn.n_relays))
        if any(g <= 0 for g in gains):
            raise ValueError("%s entries must be strictly positive" % name)

    total = 0.0
    for i in dn:
        rivals = [j for j in dn if j != i]
        win = _selection_probability(gains_id[i], [gains_id[j] for j in rivals])
        total += math.exp(-threshold / gains_ie[i]) * win
    # rounding can push a certain event a few ulp past 1
    return min(total, 1.0)


def _selection_probability(gain_i: float, rival_gains: Sequence[float]) -> float:
    """Pr(an exponential of mean gain_i exceeds independent rivals)."""
    n = len(rival_gains)
    terms = [1.0]
    for mask in range(1, 1 << n):
        ratio_sum = 0.0
        bits = 0
        for b in range(n):
            if mask >> b & 1:
                ratio_sum += gain_i / rival_gains[b]
                bits += 1
        sign = -1.0 if bits & 1 else 1.0
        terms.append(sign / (1.0 + ratio_sum))
    # alternating signs; sum largest-first with compensation
    terms.sort(key=abs, reverse=True)
    total = 0.0
    carry = 0.0
    for t in terms:
        y = t - carry
        s = total + y
        carry = (s - total) - y
        total = s
    return total
