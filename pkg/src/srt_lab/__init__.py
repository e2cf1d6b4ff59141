"""Security-reliability trade-off of decode-and-forward relay selection.

Closed-form outage/intercept probability evaluators for direct,
single-relay-selection and multi-relay-selection transmission over
Rayleigh fading, cross-validated by a deterministic full-protocol Monte
Carlo simulator, plus sweep drivers and a CSV/plot CLI.
"""

from .analytic import (
    Method,
    Scheme,
    SrtPoint,
    UnsupportedConfigurationError,
    decoding_set_probability,
    ip_direct,
    ip_multi,
    ip_single,
    op_direct,
    op_multi,
    op_single,
)
from .channel import (
    ChannelRealization,
    SystemParams,
    capacity_direct,
    decoding_set,
    draw_realization,
)
from .montecarlo import (
    McEstimate,
    estimate,
    trial_direct,
    trial_multi,
    trial_single,
)
from .special import (
    SUBSET_ENUMERATION_CAP,
    RelayIndexSet,
    SubsetCapacityError,
    best_relay_eve_exceedance,
    enumerate_nonempty_subsets,
    regularized_lower_gamma,
)
from .sweep import (
    MethodChoice,
    SweepRow,
    SweepSpec,
    db_to_linear,
    ip_at_matched_op,
    run_snr_sweep,
    run_srt_curve,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "McEstimate",
    "Method",
    "MethodChoice",
    "RelayIndexSet",
    "Scheme",
    "SrtPoint",
    "SUBSET_ENUMERATION_CAP",
    "SubsetCapacityError",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "UnsupportedConfigurationError",
    "best_relay_eve_exceedance",
    "capacity_direct",
    "db_to_linear",
    "decoding_set",
    "decoding_set_probability",
    "draw_realization",
    "enumerate_nonempty_subsets",
    "estimate",
    "ip_at_matched_op",
    "ip_direct",
    "ip_multi",
    "ip_single",
    "op_direct",
    "op_multi",
    "op_single",
    "regularized_lower_gamma",
    "run_snr_sweep",
    "run_srt_curve",
    "trial_direct",
    "trial_multi",
    "trial_single",
    "__version__",
]
