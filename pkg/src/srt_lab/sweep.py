"""Experiment drivers: SNR sweeps and security-reliability trade-off curves.

run_snr_sweep traces outage and intercept probability against transmit SNR
for each requested scheme; run_srt_curve traces the (op, ip) locus that the
SNR grid parameterizes, for several relay counts.  Output is a flat list of
rows, one per (scheme, relay count, grid point, method), ordered
deterministically and safe to re-run: everything is a pure function of the
SweepSpec, including every random draw.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .analytic import (
    Method,
    Scheme,
    SrtPoint,
    UnsupportedConfigurationError,
    ip_direct,
    ip_multi,
    ip_single,
    op_direct,
    op_multi,
    op_single,
)
from .channel import SystemParams
from .montecarlo import estimate
from .special import SUBSET_ENUMERATION_CAP, SubsetCapacityError


class MethodChoice(str, enum.Enum):
    ANALYTIC = "analytic"
    MONTE_CARLO = "monte-carlo"
    BOTH = "both"

    @property
    def wants_analytic(self) -> bool:
        return self in (MethodChoice.ANALYTIC, MethodChoice.BOTH)

    @property
    def wants_monte_carlo(self) -> bool:
        return self in (MethodChoice.MONTE_CARLO, MethodChoice.BOTH)


@dataclass(frozen=True)
class SweepSpec:
    """Everything a sweep depends on; two equal specs give equal output."""

    schemes: tuple
    gamma_db_grid: tuple
    base_params: SystemParams
    methods: MethodChoice = MethodChoice.ANALYTIC
    trials: int = 1_000_000
    seed: int = 1
    inner_trials: int = 10_000

    def __post_init__(self):
        schemes = tuple(Scheme(s) for s in self.schemes)
        object.__setattr__(self, "schemes", schemes)
        if not schemes or len(set(schemes)) != len(schemes):
            raise ValueError("schemes must be a non-empty set without duplicates")
        grid = tuple(float(g) for g in self.gamma_db_grid)
        object.__setattr__(self, "gamma_db_grid", grid)
        if not grid:
            raise ValueError("gamma_db_grid must be non-empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("gamma_db_grid must be strictly ascending")
        object.__setattr__(self, "methods", MethodChoice(self.methods))
        if self.methods.wants_monte_carlo and self.trials < 1:
            raise ValueError("trials must be positive when Monte Carlo is requested")
        if self.inner_trials < 1000:
            raise ValueError("inner_trials must be at least 1000")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class SweepRow:
    """One table row: key fields plus the point (None when evaluation failed)."""

    scheme: Scheme
    n_relays: int
    gamma_db: float
    rate: float
    method: Method
    point: Optional[SrtPoint]
    trials: Optional[int] = None
    seed: Optional[int] = None
    error: Optional[str] = None

    @property
    def op(self):
        return None if self.point is None else self.point.op

    @property
    def ip(self):
        return None if self.point is None else self.point.ip

    @property
    def op_stderr(self):
        return None if self.point is None else self.point.op_stderr

    @property
    def ip_stderr(self):
        return None if self.point is None else self.point.ip_stderr


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _derive_seed(*keys) -> int:
    return int(np.random.SeedSequence(entropy=tuple(int(k) for k in keys))
               .generate_state(1, dtype=np.uint64)[0])


_SCHEME_INDEX = {Scheme.DIRECT: 0, Scheme.SINGLE_RELAY: 1, Scheme.MULTI_RELAY: 2}


def _analytic_row(scheme, params, spec, gamma_db, n_relays, derived_seed):
    try:
        if scheme is Scheme.DIRECT:
            point = SrtPoint(scheme, op_direct(params), ip_direct(params), Method.ANALYTIC)
            return SweepRow(scheme, n_relays, gamma_db, params.rate, Method.ANALYTIC, point)
        if scheme is Scheme.SINGLE_RELAY:
            point = SrtPoint(scheme, op_single(params), ip_single(params), Method.ANALYTIC)
            return SweepRow(scheme, n_relays, gamma_db, params.rate, Method.ANALYTIC, point)
        # multi: op exact, ip semi-analytic, so the pair carries stderr
        op = op_multi(params)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(derived_seed,)))
        ip, ip_err = ip_multi(params, spec.inner_trials, rng)
        point = SrtPoint(scheme, op, ip, Method.SEMI_ANALYTIC,
                         op_stderr=0.0, ip_stderr=ip_err)
        return SweepRow(scheme, n_relays, gamma_db, params.rate, Method.SEMI_ANALYTIC,
                        point, trials=spec.inner_trials, seed=spec.seed)
    except (SubsetCapacityError, UnsupportedConfigurationError) as exc:
        method = Method.SEMI_ANALYTIC if scheme is Scheme.MULTI_RELAY else Method.ANALYTIC
        return SweepRow(scheme, n_relays, gamma_db, params.rate, method,
                        None, error=str(exc))


def _mc_row(scheme, params, spec, gamma_db, n_relays, derived_seed):
    op_est, ip_est = estimate(scheme, params, spec.trials, derived_seed)
    point = SrtPoint(scheme, op_est.p_hat, ip_est.p_hat, Method.MONTE_CARLO,
                     op_stderr=op_est.stderr, ip_stderr=ip_est.stderr)
    return SweepRow(scheme, n_relays, gamma_db, params.rate, Method.MONTE_CARLO,
                    point, trials=spec.trials, seed=spec.seed)


def _rows_for(scheme, params, spec, gamma_db, grid_index, n_relays):
    rows = []
    si = _SCHEME_INDEX[scheme]
    if spec.methods.wants_analytic:
        seed = _derive_seed(spec.seed, 0, si, n_relays, grid_index)
        rows.append(_analytic_row(scheme, params, spec, gamma_db, n_relays, seed))
    if spec.methods.wants_monte_carlo:
        seed = _derive_seed(spec.seed, 1, si, n_relays, grid_index)
        rows.append(_mc_row(scheme, params, spec, gamma_db, n_relays, seed))
    return rows


def run_snr_sweep(spec: SweepSpec):
    """One row per (scheme, grid point, method), scheme-major, gamma ascending."""
    rows = []
    for scheme in spec.schemes:
        n = 0 if scheme is Scheme.DIRECT else spec.base_params.n_relays
        for gi, gamma_db in enumerate(spec.gamma_db_grid):
            params = spec.base_params.with_gamma(db_to_linear(gamma_db))
            rows.extend(_rows_for(scheme, params, spec, gamma_db, gi, n))
    return rows


def run_srt_curve(spec: SweepSpec, n_values: Sequence[int]):
    """The (op, ip) locus per (scheme, N) as gamma sweeps the grid.

    The direct locus does not depend on N and is emitted once, tagged with
    n_relays = 0.
    """
    n_values = [int(n) for n in n_values]
    if not n_values or len(set(n_values)) != len(n_values):
        raise ValueError("n_values must be non-empty without duplicates")
    for n in n_values:
        if n < 1:
            raise ValueError("n_values entries must be at least 1")
        if n > SUBSET_ENUMERATION_CAP:
            raise SubsetCapacityError(
                "n_values entry %d exceeds the %d-relay cap" % (n, SUBSET_ENUMERATION_CAP)
            )
    rows = []
    if Scheme.DIRECT in spec.schemes:
        for gi, gamma_db in enumerate(spec.gamma_db_grid):
            params = spec.base_params.with_gamma(db_to_linear(gamma_db))
            rows.extend(_rows_for(Scheme.DIRECT, params, spec, gamma_db, gi, 0))
    relay_schemes = [s for s in spec.schemes if s is not Scheme.DIRECT]
    for n in n_values:
        base = spec.base_params.with_n_relays(n)
        for scheme in relay_schemes:
            for gi, gamma_db in enumerate(spec.gamma_db_grid):
                params = base.with_gamma(db_to_linear(gamma_db))
                rows.extend(_rows_for(scheme, params, spec, gamma_db, gi, n))
    return rows


def ip_at_matched_op(rows: Sequence[SweepRow], op_level: float) -> float:
    """Interpolate one locus's intercept probability at a given outage level.

    Both axes span decades, so interpolation is piecewise linear in
    log(ip) against log(op).  The rows must all belong to a single locus
    (one scheme, one relay count, one method) and op_level must fall inside
    the locus's realized op range.
    """
    pts = sorted(
        (row.op, row.ip)
        for row in rows
        if row.point is not None and row.op > 0.0 and row.ip > 0.0
    )
    if len(pts) < 2:
        raise ValueError("need at least two positive points to interpolate")
    ops = np.array([p[0] for p in pts])
    ips = np.array([p[1] for p in pts])
    if not ops[0] <= op_level <= ops[-1]:
        raise ValueError(
            "op level %g outside the locus range [%g, %g]" % (op_level, ops[0], ops[-1])
        )
    return float(math.exp(np.interp(math.log(op_level), np.log(ops), np.log(ips))))
