# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import ZeroEnergyError
from src.core.frequency_grid import FrequencyGrid
from src.core.sweep import ChannelSweep, Cir
from src.signal_processing.fom import (
    FomConfig,
    cir_from_sweep,
    delay_spread,
    find_peak,
    fom,
)

DEFAULT = FomConfig()


def direct_inverse_dft(sweep, zero_pad_factor):
    """O(n²) 직접 합: (1/K)·Σ_k X_k·exp(i2π(f_k − f_c)·t_n)"""
    count = len(sweep)
    length = zero_pad_factor * count
    offsets = (np.arange(count) - (count - 1) / 2.0) * sweep.grid.step
    t_step = 1.0 / (length * sweep.grid.step)
    times = np.arange(length) * t_step
    kernel = np.exp(2j * np.pi * np.outer(times, offsets))
    return kernel @ sweep.samples / count


def spike_cir(length, positions, t_step=0.1e-9, value=1.0):
    samples = np.zeros(length, dtype=complex)
    for p in positions:
        samples[p] = value
    return Cir(t_step, samples)


def test_config_defaults_and_validation():
    assert DEFAULT.window == pytest.approx(0.286e-9)
    assert DEFAULT.cutoff == pytest.approx(50e-9)
    assert DEFAULT.zero_pad_factor == 16
    assert DEFAULT.spectral_window == "rectangular"
    with pytest.raises(ValidationError):
        FomConfig(window=60e-9)
    with pytest.raises(ValidationError):
        FomConfig(zero_pad_factor=0)


def test_flat_spectrum_peaks_at_zero_with_dirichlet_shape():
    grid = FrequencyGrid(5.7e9, 6.1e9, 41)
    cfg = FomConfig(zero_pad_factor=4)
    cir = cir_from_sweep(ChannelSweep(grid, np.ones(41)), cfg)
    assert np.argmax(cir.power) == 0
    assert abs(cir.samples[0]) == pytest.approx(1.0, rel=1e-12)
    n = np.arange(1, 40)
    length = 4 * 41
    dirichlet = np.abs(np.sin(np.pi * 41 * n / length) / (41 * np.sin(np.pi * n / length)))
    np.testing.assert_allclose(np.abs(cir.samples[1:40]), dirichlet, atol=1e-12)


def test_delay_spectrum_peaks_near_delay():
    grid = FrequencyGrid(5.7e9, 6.1e9, 401)
    tau = 5e-9
    sweep = ChannelSweep(grid, np.exp(-2j * np.pi * grid.frequencies() * tau))
    cir = cir_from_sweep(sweep, DEFAULT)
    peak = find_peak(cir, DEFAULT)
    assert peak.peak_index == int(round(tau / cir.t_step))


@pytest.mark.parametrize("count,zero_pad_factor", [(64, 1), (101, 4), (401, 1)])
def test_transform_matches_direct_summation(count, zero_pad_factor):
    rng = np.random.default_rng(count)
    grid = FrequencyGrid(5.7e9, 6.1e9, count)
    sweep = ChannelSweep(grid, rng.normal(size=count) + 1j * rng.normal(size=count))
    cir = cir_from_sweep(sweep, FomConfig(zero_pad_factor=zero_pad_factor))
    expected = direct_inverse_dft(sweep, zero_pad_factor)
    error = np.max(np.abs(cir.samples - expected)) / np.max(np.abs(expected))
    assert error <= 1e-9


def test_transform_matches_direct_summation_on_default_band():
    rng = np.random.default_rng(0)
    grid = FrequencyGrid(5.7e9, 6.1e9, 401)
    sweep = ChannelSweep(grid, rng.normal(size=401) + 1j * rng.normal(size=401))
    cir = cir_from_sweep(sweep, FomConfig(zero_pad_factor=2))
    expected = direct_inverse_dft(sweep, 2)
    assert np.max(np.abs(cir.samples - expected)) / np.max(np.abs(expected)) <= 1e-9


def test_parseval_rectangular_window():
    rng = np.random.default_rng(3)
    grid = FrequencyGrid(5.7e9, 6.1e9, 401)
    samples = rng.normal(size=401) + 1j * rng.normal(size=401)
    cir = cir_from_sweep(ChannelSweep(grid, samples), DEFAULT)
    spectral = np.sum(np.abs(samples) ** 2) / 401
    assert cir.energy / DEFAULT.zero_pad_factor == pytest.approx(spectral, rel=1e-9)


def test_time_step_convention():
    grid = FrequencyGrid(5.7e9, 6.1e9, 401)
    cir = cir_from_sweep(ChannelSweep(grid, np.ones(401)), DEFAULT)
    assert cir.t_step == pytest.approx(1.0 / (16 * 401 * 1e6))
    assert len(cir) == 16 * 401


def test_hann_window_tapers_sidelobes():
    grid = FrequencyGrid(5.7e9, 6.1e9, 101)
    flat = ChannelSweep(grid, np.ones(101))
    rect = cir_from_sweep(flat, FomConfig(zero_pad_factor=8))
    hann = cir_from_sweep(flat, FomConfig(zero_pad_factor=8, spectral_window="hann"))
    far = slice(100, 400)
    assert np.max(hann.power[far]) < np.max(rect.power[far])


def test_zero_spectrum_gives_zero_cir_and_zero_energy_error():
    grid = FrequencyGrid(5.7e9, 6.1e9, 11)
    cir = cir_from_sweep(ChannelSweep(grid, np.zeros(11)), DEFAULT)
    assert cir.energy == 0.0
    with pytest.raises(ZeroEnergyError):
        fom(cir, DEFAULT)


def test_find_peak_single_spike():
    assert find_peak(spike_cir(64, [7]), DEFAULT).peak_index == 7


def test_find_peak_earliest_tie():
    peak = find_peak(spike_cir(64, [3, 9]), DEFAULT)
    assert peak.peak_index == 3
    assert peak.t_o == pytest.approx(3 * 0.1e-9)
    assert peak.peak_power == pytest.approx(1.0)


def test_spike_beyond_cutoff_only_is_zero_energy():
    cfg = FomConfig(cutoff=2e-9, window=0.2e-9)
    with pytest.raises(ZeroEnergyError):
        find_peak(spike_cir(64, [40]), cfg)


def test_fom_single_sample_is_one():
    assert fom(spike_cir(64, [12]), DEFAULT) == pytest.approx(1.0, abs=1e-12)


def test_fom_two_equal_spikes_is_half():
    assert fom(spike_cir(256, [10, 60]), DEFAULT) == pytest.approx(0.5, abs=1e-12)


def test_fom_uniform_power_window_to_cutoff_ratio():
    t_step = 0.001e-9
    samples = np.ones(50001, dtype=complex)
    samples[25000] = 1.0 + 1e-9
    cir = Cir(t_step, samples)
    value = fom(cir, DEFAULT)
    analytic = (math.floor(DEFAULT.window / t_step) + 1) * t_step / DEFAULT.cutoff
    assert value == pytest.approx(analytic, rel=0.01)
    assert value == pytest.approx(0.00572, rel=0.01)


def test_fom_scale_invariance():
    rng = np.random.default_rng(1)
    cir = Cir(0.1e-9, rng.normal(size=600) + 1j * rng.normal(size=600))
    for c in (3.0, -0.5j, 1e-6 + 2e-6j):
        scaled = Cir(cir.t_step, c * cir.samples)
        assert fom(scaled, DEFAULT) == pytest.approx(fom(cir, DEFAULT), rel=1e-12)


def test_fom_time_shift_covariance():
    rng = np.random.default_rng(2)
    base = np.zeros(600, dtype=complex)
    base[20:120] = rng.normal(size=100) + 1j * rng.normal(size=100)
    reference = fom(Cir(0.05e-9, base), DEFAULT)
    for k in (1, 37, 200):
        shifted = np.roll(base, k)
        assert fom(Cir(0.05e-9, shifted), DEFAULT) == pytest.approx(reference, abs=1e-12)


def test_fom_is_in_unit_interval_for_random_cirs():
    rng = np.random.default_rng(6)
    for _ in range(20):
        cir = Cir(0.1e-9, rng.normal(size=800) + 1j * rng.normal(size=800))
        assert 0.0 < fom(cir, DEFAULT) <= 1.0


def test_delay_spread_examples():
    assert delay_spread(spike_cir(64, [5]), DEFAULT) == 0.0
    t_step = 0.1e-9
    spread = delay_spread(spike_cir(64, [5, 25], t_step=t_step), DEFAULT)
    assert spread == pytest.approx(20 * t_step / 2, rel=1e-12)


def test_delay_spread_uniform_power():
    t_step = 0.01e-9
    total = 20e-9
    cir = Cir(t_step, np.ones(int(round(total / t_step)) + 1))
    assert delay_spread(cir, DEFAULT) == pytest.approx(total / math.sqrt(12), rel=1e-3)


def test_delay_spread_zero_energy():
    with pytest.raises(ZeroEnergyError):
        delay_spread(Cir(1e-9, np.zeros(8)), DEFAULT)
