import math
from dataclasses import replace

import numpy as np
import pytest

from maee import (
    SystemParams,
    build_expansion,
    ee_upper_bound,
    efficiency_curve,
    energy_efficiency,
    gain_eval,
    movement_energy,
    mrc_snr,
    throughput,
    total_energy,
)

from conftest import make_instance, single_path_instance


def test_mrc_snr_zero_gain(params):
    assert mrc_snr(0.0, params) == 0.0


def test_mrc_snr_reference_parameters(params):
    # 0.01 W * 1e-6 / 1e-10 W
    assert mrc_snr(1e-6, params) == pytest.approx(100.0, rel=1e-12)


def test_mrc_snr_linear_in_power(params):
    doubled = replace(params, max_tx_power=2 * params.max_tx_power)
    assert mrc_snr(3e-7, doubled) == pytest.approx(2 * mrc_snr(3e-7, params), rel=1e-12)


def test_mrc_snr_rejects_negative(params):
    with pytest.raises(ValueError):
        mrc_snr(-1e-3, params)
    # float noise below the tolerance is clamped, not rejected
    assert mrc_snr(-1e-12, params) == 0.0


def test_movement_energy_rate(params):
    assert params.move_energy_rate == pytest.approx(2.5)


def test_movement_energy_zero_at_rest(params):
    assert movement_energy(params.initial_position, params) == 0.0


def test_movement_energy_reference(params):
    assert movement_energy(params.initial_position + 0.01, params) == pytest.approx(0.025)


def test_movement_energy_symmetric(params):
    delta = 0.004
    assert movement_energy(params.initial_position + delta, params) == pytest.approx(
        movement_energy(params.initial_position - delta, params))


def test_movement_energy_outside_region_raises(params):
    with pytest.raises(ValueError):
        movement_energy(params.region_length + 1e-6, params)
    with pytest.raises(ValueError):
        movement_energy(-1e-6, params)


def test_total_energy_at_rest(params):
    assert total_energy(params.initial_position, 1e-8, params) == pytest.approx(0.05)


def test_total_energy_reference(params):
    # 2.5 J/m * 0.01 m + 0.01 W * (5 - 0.05) s
    assert total_energy(params.initial_position + 0.01, 1e-8, params) == pytest.approx(0.0745)


def test_total_energy_boundary_move():
    p = SystemParams(block_duration=0.05)
    # moving the full 0.01 m takes exactly the block; only movement energy remains
    assert total_energy(0.0, 1e-8, p) == pytest.approx(p.move_energy_rate * 0.01)


def test_total_energy_move_exceeding_block_raises():
    p = SystemParams(block_duration=0.01)
    with pytest.raises(ValueError):
        total_energy(0.0, 1e-8, p)


def test_throughput_at_rest_snr3(params):
    gain = 3.0 * params.noise_power / params.max_tx_power
    assert throughput(params.initial_position, gain, params) == pytest.approx(10.0)


def test_throughput_zero_gain(params):
    assert throughput(params.initial_position + 0.003, 0.0, params) == 0.0


def test_throughput_zero_time_regardless_of_gain():
    p = SystemParams(block_duration=0.05)
    assert throughput(0.0, 1.0, p) == pytest.approx(0.0, abs=1e-12)


def test_energy_efficiency_at_rest_identity(params):
    gain = 2.3e-8
    breakdown = energy_efficiency(params.initial_position, gain, params)
    expected = math.log2(1.0 + mrc_snr(gain, params)) / params.max_tx_power
    assert breakdown.ee == pytest.approx(expected, rel=1e-12)
    assert breakdown.move_time == 0.0


def test_energy_efficiency_zero_gain_infeasible(params):
    breakdown = energy_efficiency(params.initial_position, 0.0, params)
    assert breakdown.ee == 0.0
    assert not breakdown.feasible


def test_energy_efficiency_reference_chain(params):
    gain = 1e-3  # SNR 1e5 at the default powers
    x = params.initial_position + 0.01
    breakdown = energy_efficiency(x, gain, params)
    assert breakdown.snr == pytest.approx(1e5, rel=1e-12)
    assert breakdown.throughput == pytest.approx(4.95 * math.log2(1 + 1e5), rel=1e-12)
    assert breakdown.energy == pytest.approx(0.0745, rel=1e-12)
    assert breakdown.ee == pytest.approx(breakdown.throughput / 0.0745, rel=1e-12)
    assert breakdown.feasible


@pytest.mark.parametrize("seed", range(3))
def test_ee_times_energy_equals_throughput(seed, params):
    rng = np.random.default_rng(seed)
    for _ in range(20):
        x = rng.uniform(0, params.region_length)
        gain = rng.uniform(0, 1e-7)
        b = energy_efficiency(x, gain, params)
        assert b.ee * b.energy == pytest.approx(b.throughput, rel=1e-9)


def test_ee_monotone_in_gain(params):
    x = params.initial_position + 0.004
    values = [energy_efficiency(x, g, params).ee for g in (0.0, 1e-9, 1e-8, 1e-7, 1e-6)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_zero_move_independent_of_movement_params(params):
    gain = 3e-8
    base = energy_efficiency(params.initial_position, gain, params).ee
    for power, speed in ((0.1, 0.05), (5.0, 1.0), (0.5, 0.01)):
        other = replace(params, movement_power=power, speed=speed)
        assert energy_efficiency(other.initial_position, gain, other).ee == pytest.approx(
            base, rel=1e-12)


def test_efficiency_curve_matches_scalar(params):
    expansion = build_expansion(make_instance(4), params.wavelength)
    xs = np.linspace(0.0, params.region_length, 64)
    ee_vals, rates, energies, feasible = efficiency_curve(expansion, params, xs)
    for i, x in enumerate(xs):
        b = energy_efficiency(float(x), max(gain_eval(expansion, float(x)), 0.0), params)
        assert ee_vals[i] == pytest.approx(b.ee, rel=1e-12)
        assert rates[i] == pytest.approx(b.throughput, rel=1e-12, abs=1e-15)
        assert energies[i] == pytest.approx(b.energy, rel=1e-12)
        assert bool(feasible[i]) == b.feasible


def test_ee_upper_bound_constant_gain(params):
    instance = single_path_instance(response=1e-4, num_antennas=params.num_bs_antennas)
    expansion = build_expansion(instance, params.wavelength)
    bound, x_bar = ee_upper_bound(expansion, params)
    assert x_bar == 0.0
    expected = math.log2(1.0 + mrc_snr(expansion.constant, params)) / params.max_tx_power
    assert bound == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_ee_upper_bound_dominates_grid(seed, params):
    expansion = build_expansion(make_instance(seed), params.wavelength)
    bound, _ = ee_upper_bound(expansion, params)
    xs = np.linspace(0.0, params.region_length, 2000)
    ee_vals, _, _, _ = efficiency_curve(expansion, params, xs)
    assert np.all(ee_vals <= bound * (1.0 + 1e-9))


def test_ee_upper_bound_equality_when_recentered(params):
    expansion = build_expansion(make_instance(8), params.wavelength)
    bound, x_bar = ee_upper_bound(expansion, params)
    recentered = replace(params, initial_position=x_bar)
    gain = max(gain_eval(expansion, x_bar), 0.0)
    assert energy_efficiency(x_bar, gain, recentered).ee == pytest.approx(bound, rel=1e-9)


def test_ee_upper_bound_rejects_bad_resolution(params):
    expansion = build_expansion(make_instance(0), params.wavelength)
    with pytest.raises(ValueError):
        ee_upper_bound(expansion, params, grid_resolution=0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(region_length=-1.0)
    with pytest.raises(ValueError):
        SystemParams(initial_position=0.021)
    with pytest.raises(ValueError):
        SystemParams(speed=0.0)
    with pytest.raises(ValueError):
        SystemParams(tolerance=1.5)
    with pytest.raises(ValueError):
        SystemParams(noise_power=0.0)
