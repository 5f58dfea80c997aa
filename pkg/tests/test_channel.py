"""Channel generator: pathloss, determinism, fading statistics."""

import numpy as np
import pytest

from wpcn.channel import (ChannelBlock, generate_channel, pathloss_linear,
                          tap_variances)
from wpcn.config import SystemConfig


def test_pathloss_reference_points():
    # 10^((-31.5 - 30 log10 d)/10), frozen from a direct evaluation
    assert pathloss_linear(1.0) == pytest.approx(7.07945784384138e-4, rel=1e-10)
    assert pathloss_linear(10.0) == pytest.approx(7.079457843841374e-7, rel=1e-10)
    assert pathloss_linear(3.0) == pytest.approx(2.6220214236449554e-5, rel=1e-10)


def test_pathloss_rejects_nonpositive_distance():
    for d in (0.0, -2.0):
        with pytest.raises(ValueError):
            pathloss_linear(d)


def test_pathloss_exponent_scaling():
    # doubling the exponent doubles the dB slope
    ratio_3 = pathloss_linear(10.0, 3.0) / pathloss_linear(1.0, 3.0)
    ratio_6 = pathloss_linear(10.0, 6.0) / pathloss_linear(1.0, 6.0)
    assert ratio_6 == pytest.approx(ratio_3 ** 2, rel=1e-9)


def test_generation_is_deterministic():
    cfg = SystemConfig(num_slots=5, num_subchannels=8)
    a = generate_channel(cfg, seed=123)
    b = generate_channel(cfg, seed=123)
    assert np.array_equal(a.h, b.h) and np.array_equal(a.g, b.g)


def test_distinct_seeds_give_distinct_blocks():
    cfg = SystemConfig(num_slots=5, num_subchannels=8)
    a = generate_channel(cfg, seed=1)
    b = generate_channel(cfg, seed=2)
    assert not np.array_equal(a.h, b.h)
    assert not np.array_equal(a.g, b.g)


def test_links_are_independent_draws():
    cfg = SystemConfig(num_slots=5, num_subchannels=8,
                       dist_eap_user=3.0, dist_user_dap=3.0)
    block = generate_channel(cfg, seed=5)
    assert not np.array_equal(block.h, block.g)


def test_single_tap_is_flat_across_subchannels():
    cfg = SystemConfig(num_slots=4, num_subchannels=8, num_taps=1)
    block = generate_channel(cfg, seed=9)
    for row in block.h:
        assert row == pytest.approx(row[0] * np.ones_like(row), rel=1e-12)


def test_gains_strictly_positive_and_finite():
    cfg = SystemConfig(num_slots=61, num_subchannels=16)
    block = generate_channel(cfg, seed=3)
    assert np.all(block.h > 0) and np.all(np.isfinite(block.h))
    assert np.all(block.g > 0) and np.all(np.isfinite(block.g))


def test_block_validation():
    ok = np.ones((2, 2))
    with pytest.raises(ValueError):
        ChannelBlock(h=np.array([[1.0, 0.0], [1.0, 1.0]]), g=ok, seed=0)
    with pytest.raises(ValueError):
        ChannelBlock(h=ok, g=np.ones((2, 3)), seed=0)


def test_tap_profile_is_exponential_and_normalized():
    cfg = SystemConfig()
    var = tap_variances(cfg)
    assert var.sum() == pytest.approx(1.0)
    spacing = 1.0 / (cfg.num_subchannels * cfg.sc_bandwidth)
    expected_decay = np.exp(-spacing / cfg.rms_delay_spread)
    assert var[1] / var[0] == pytest.approx(expected_decay, rel=1e-12)


def test_mean_per_sc_gain_matches_pathloss():
    # >= 1e4 slot realizations: expected per-sub-channel gain equals the
    # pathloss, so the per-slot sum over N SCs averages N * pathloss.
    cfg = SystemConfig(num_slots=400, num_subchannels=16)
    rows = []
    for seed in range(25):
        rows.append(generate_channel(cfg, seed).h)
    h = np.concatenate(rows, axis=0)
    assert h.shape[0] == 10_000
    target = pathloss_linear(cfg.dist_eap_user, cfg.pathloss_exponent)
    assert h.mean() == pytest.approx(target, rel=0.02)
    assert h.sum(axis=1).mean() == pytest.approx(cfg.num_subchannels * target, rel=0.02)


def test_frequency_correlation_tracks_coherence_bandwidth():
    # Coherence bandwidth 1/(2 pi sigma_rms) ~ 8 MHz = 2 sub-channel spacings:
    # adjacent SCs correlate strongly, SCs two coherence bandwidths apart don't.
    cfg = SystemConfig(num_slots=500, num_subchannels=16)
    rows = [generate_channel(cfg, seed).h for seed in range(20)]
    h = np.concatenate(rows, axis=0)

    def corr(lag):
        a, b = h[:, :-lag].ravel(), h[:, lag:].ravel()
        return np.corrcoef(a, b)[0, 1]

    coherence_bw = 1.0 / (2 * np.pi * cfg.rms_delay_spread)
    assert coherence_bw == pytest.approx(7.96e6, rel=0.01)
    assert corr(1) > 0.5    # 4 MHz apart, inside the coherence bandwidth
    assert corr(4) < 0.3    # 16 MHz apart, beyond twice the coherence bandwidth
