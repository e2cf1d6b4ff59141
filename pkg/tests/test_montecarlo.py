"""Trial predicates, estimator determinism, batch/scalar agreement."""

import math

import numpy as np
import pytest

from srt_lab import (
    ChannelRealization,
    McEstimate,
    Scheme,
    SystemParams,
    decoding_set,
    draw_realization,
    estimate,
    ip_direct,
    ip_single,
    op_direct,
    op_multi,
    op_single,
    trial_direct,
    trial_multi,
    trial_single,
)
from srt_lab.montecarlo import BLOCK_SIZE, _draw_block, _eval_block


def _real(n=6, h_sd=0j, h_se=0j, h_si=None, h_id=None, h_ie=None):
    def arr(v):
        if v is None:
            return np.zeros(n, complex)
        return np.asarray(v, dtype=complex)
    return ChannelRealization(h_sd=h_sd, h_se=h_se, h_si=arr(h_si),
                              h_id=arr(h_id), h_ie=arr(h_ie))


class TestMcEstimate:
    def test_arithmetic(self):
        est = McEstimate(trials=400, successes=100)
        assert est.p_hat == 0.25
        assert est.stderr == pytest.approx(math.sqrt(0.25 * 0.75 / 400), rel=1e-15)

    @pytest.mark.parametrize("successes", [0, 1])
    def test_degenerate_single_trial(self, successes):
        est = McEstimate(trials=1, successes=successes)
        assert est.stderr == 0.0

    @pytest.mark.parametrize("trials,successes", [(0, 0), (10, 11), (10, -1)])
    def test_rejects_invalid(self, trials, successes):
        with pytest.raises(ValueError):
            McEstimate(trials=trials, successes=successes)


class TestTrialDirect:
    def test_dead_channel_is_outage_without_intercept(self, defaults):
        assert trial_direct(_real(), defaults) == (True, False)

    def test_clear_main_link_quiet_eavesdropper(self, defaults):
        # threshold 0.1: main power 0.2 passes, eavesdropper power 0.05 fails
        real = _real(h_sd=complex(math.sqrt(0.2), 0), h_se=complex(math.sqrt(0.05), 0))
        assert trial_direct(real, defaults) == (False, False)

    def test_huge_snr_everyone_hears(self, defaults):
        real = _real(h_sd=0.1 + 0.2j, h_se=0.05j)
        p = defaults.with_gamma(1e15)
        assert trial_direct(real, p) == (False, True)

    def test_boundary_counts_against_success(self):
        # gamma=10, rate=1: direct threshold exactly (2-1)/10; |h|^2 == 0.1
        # is not achievable exactly in floats, so probe with threshold 0.25
        p = SystemParams.defaults(gamma=12.0, rate=1.0)
        assert p.direct_threshold == pytest.approx(1.0 / 12.0, rel=1e-16)
        p2 = SystemParams.defaults(gamma=4.0)  # threshold 0.25 exactly
        assert p2.direct_threshold == 0.25
        real = _real(h_sd=0.5 + 0j, h_se=0.5 + 0j)
        outage, intercept = trial_direct(real, p2)
        assert outage is True and intercept is False


class TestTrialSingle:
    def test_empty_decoding_set(self, defaults):
        assert trial_single(_real(), defaults) == (True, False)

    def test_best_relay_example(self):
        # both relays decode; relay 0 wins with 0.9 > 0.4, its destination
        # link clears 0.3 but its eavesdropper link 0.5 also clears 0.3
        p = SystemParams.defaults(n_relays=2)
        real = _real(
            n=2,
            h_si=[10, 10],
            h_id=[complex(math.sqrt(0.9), 0), complex(math.sqrt(0.4), 0)],
            h_ie=[complex(math.sqrt(0.5), 0), 0],
        )
        assert trial_single(real, p) == (False, True)

    def test_exact_threshold_tie_fails_both_ways(self):
        # gamma=12, rate=1: two-slot threshold 0.25; |0.5+0j|^2 == 0.25 exactly
        p = SystemParams.defaults(n_relays=1, gamma=12.0)
        assert p.relay_threshold == 0.25
        real = _real(n=1, h_si=[10], h_id=[0.5 + 0j], h_ie=[0.5 + 0j])
        outage, intercept = trial_single(real, p)
        assert outage is True
        assert intercept is False

    def test_tie_breaks_to_lowest_index(self):
        p = SystemParams.defaults(n_relays=2)
        base = dict(n=2, h_si=[10, 10], h_id=[1 + 0j, 1 + 0j])
        strong_first = _real(h_ie=[10, 0], **base)
        strong_second = _real(h_ie=[0, 10], **base)
        assert trial_single(strong_first, p) == (False, True)
        assert trial_single(strong_second, p) == (False, False)


class TestTrialMulti:
    def test_empty_decoding_set(self, defaults):
        assert trial_multi(_real(), defaults) == (True, False)

    def test_orthogonal_eavesdropper_hears_nothing(self):
        p = SystemParams.defaults(n_relays=2)
        real = _real(n=2, h_si=[10, 10], h_id=[1, 1], h_ie=[1, -1])
        assert trial_multi(real, p) == (False, False)

    def test_aligned_eavesdropper_hears_everything(self):
        p = SystemParams.defaults(n_relays=2)
        real = _real(n=2, h_si=[10, 10], h_id=[1, 1], h_ie=[1, 1])
        assert trial_multi(real, p) == (False, True)

    def test_combining_rescues_weak_links(self):
        # individually 0.25 < 0.3, together 0.5 > 0.3
        p = SystemParams.defaults(n_relays=2)
        real = _real(n=2, h_si=[10, 10], h_id=[0.5 + 0j, 0.5 + 0j], h_ie=[0, 0])
        outage, _ = trial_multi(real, p)
        assert outage is False
        single_outage, _ = trial_single(real, p)
        assert single_outage is True

    def test_single_member_set_matches_selection_scheme(self):
        p = SystemParams.defaults(n_relays=3)
        rng = np.random.default_rng(31)
        forced = np.array([0, 10, 0], dtype=complex)  # only relay 1 decodes
        for _ in range(200):
            real = _real(
                n=3,
                h_si=forced,
                h_id=rng.standard_normal(3) + 1j * rng.standard_normal(3),
                h_ie=(rng.standard_normal(3) + 1j * rng.standard_normal(3)) * 0.3,
            )
            assert decoding_set(real, p).members == (1,)
            assert trial_multi(real, p) == trial_single(real, p)

    def test_dominance_invariants_on_random_draws(self, defaults):
        rng = np.random.default_rng(77)
        for _ in range(2000):
            real = draw_realization(defaults, rng)
            ds = decoding_set(real, defaults)
            m_out, m_int = trial_multi(real, defaults)
            s_out, _ = trial_single(real, defaults)
            if ds.cardinality() == 0:
                assert m_out and not m_int
                continue
            members = np.asarray(ds.members)
            powers = np.abs(real.h_id[members]) ** 2
            # combined power dominates the best individual power
            assert powers.sum() >= powers.max()
            # multi-relay outage implies single-relay outage
            assert (not m_out) or s_out
            # projected eavesdropper power obeys Cauchy-Schwarz
            proj = abs(np.sum(np.conj(real.h_id[members]) * real.h_ie[members])) ** 2
            cap = powers.sum() * np.sum(np.abs(real.h_ie[members]) ** 2)
            assert proj <= cap * (1.0 + 1e-9)


class TestEstimate:
    def test_validation(self, defaults):
        with pytest.raises(ValueError):
            estimate(Scheme.DIRECT, defaults, trials=0, seed=1)
        with pytest.raises(ValueError):
            estimate(Scheme.DIRECT, defaults, trials=10, seed=-1)
        with pytest.raises(ValueError):
            estimate(Scheme.DIRECT, defaults, trials=10, seed=2**64)
        p0 = SystemParams.defaults(n_relays=0)
        with pytest.raises(ValueError):
            estimate(Scheme.SINGLE_RELAY, p0, trials=10, seed=1)
        op, ip = estimate(Scheme.DIRECT, p0, trials=1000, seed=1)
        assert op.trials == 1000 and ip.trials == 1000

    def test_accepts_scheme_strings(self, defaults):
        a = estimate("direct", defaults, trials=4096, seed=3)
        b = estimate(Scheme.DIRECT, defaults, trials=4096, seed=3)
        assert a == b

    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_deterministic_across_block_boundaries(self, scheme, defaults):
        trials = BLOCK_SIZE + 257
        a = estimate(scheme, defaults, trials=trials, seed=11)
        b = estimate(scheme, defaults, trials=trials, seed=11)
        assert a == b
        c = estimate(scheme, defaults, trials=trials, seed=12)
        assert (a[0].successes, a[1].successes) != (c[0].successes, c[1].successes)

    def test_thread_count_does_not_change_counts(self, defaults, monkeypatch):
        trials = 3 * BLOCK_SIZE + 11
        base = estimate(Scheme.MULTI_RELAY, defaults, trials=trials, seed=5)
        monkeypatch.setenv("SRT_LAB_THREADS", "4")
        threaded = estimate(Scheme.MULTI_RELAY, defaults, trials=trials, seed=5)
        assert base == threaded

    @pytest.mark.parametrize("value", ["0", "-2", "abc", ""])
    def test_rejects_bad_thread_env(self, defaults, monkeypatch, value):
        monkeypatch.setenv("SRT_LAB_THREADS", value)
        with pytest.raises(ValueError):
            estimate(Scheme.DIRECT, defaults, trials=10, seed=1)

    def test_tracks_closed_forms(self, defaults):
        trials = 100_000
        checks = [
            (Scheme.DIRECT, op_direct(defaults), ip_direct(defaults)),
            (Scheme.SINGLE_RELAY, op_single(defaults), ip_single(defaults)),
            (Scheme.MULTI_RELAY, op_multi(defaults), None),
        ]
        for scheme, op_want, ip_want in checks:
            op_est, ip_est = estimate(scheme, defaults, trials=trials, seed=2026)
            assert abs(op_est.p_hat - op_want) < 4.0 * op_est.stderr + 1e-9
            if ip_want is not None:
                assert abs(ip_est.p_hat - ip_want) < 4.0 * ip_est.stderr + 1e-9


class TestBatchScalarAgreement:
    """The vectorized block evaluator must reproduce the scalar trials bit
    for bit, otherwise the estimator is silently measuring something else.
    """

    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_block_matches_scalar_trials(self, scheme, defaults):
        m = 512
        arrays = _draw_block(scheme, defaults, seed=91, start=0, stop=m)
        outage, intercept = _eval_block(scheme, defaults, arrays)
        zeros = np.zeros(6, complex)
        for t in range(m):
            if scheme is Scheme.DIRECT:
                real = ChannelRealization(
                    h_sd=complex(arrays["h_sd"][t]), h_se=complex(arrays["h_se"][t]),
                    h_si=zeros, h_id=zeros, h_ie=zeros,
                )
                want = trial_direct(real, defaults)
            else:
                real = ChannelRealization(
                    h_sd=0j, h_se=0j,
                    h_si=arrays["h_si"][t], h_id=arrays["h_id"][t],
                    h_ie=arrays["h_ie"][t],
                )
                fn = trial_single if scheme is Scheme.SINGLE_RELAY else trial_multi
                want = fn(real, defaults)
            assert (bool(outage[t]), bool(intercept[t])) == want, t
