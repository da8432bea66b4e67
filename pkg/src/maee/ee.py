"""Rate, energy, and efficiency of one transmission block under MRC transmission.

A block of duration T splits into a movement phase (the antenna travels from
its rest position to x at constant speed, data transmission suspended) and a
communication phase at full transmit power. Efficiency is the delivered
bits/Hz divided by the total energy of both phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channel, search
from .params import SystemParams

# Tiny negative gains are floating-point noise from the cosine series.
_GAIN_NOISE = 1e-9


@dataclass(frozen=True)
class EEBreakdown:
    """Everything the efficiency ratio is made of at one antenna position."""

    position: float
    move_time: float
    throughput: float
    energy: float
    ee: float
    snr: float
    feasible: bool


def mrc_snr(gain: float, params: SystemParams) -> float:
    """Received SNR with full-power MRC transmission toward the user."""
    if gain < -_GAIN_NOISE:
        raise ValueError(f"gain must be nonnegative, got {gain}")
    return params.max_tx_power * max(gain, 0.0) / params.noise_power


def _travel(x: float, params: SystemParams) -> tuple[float, float]:
    """Validated (distance, move time) for a position inside the region."""
    if not 0.0 <= x <= params.region_length:
        raise ValueError(f"position {x} outside region [0, {params.region_length}]")
    dist = abs(x - params.initial_position)
    move_time = dist / params.speed
    if move_time > params.block_duration:
        raise ValueError(
            f"move time {move_time} s exceeds block duration {params.block_duration} s"
        )
    return dist, move_time


def movement_energy(x: float, params: SystemParams) -> float:
    """Energy spent relocating the antenna from its rest position to x."""
    if not 0.0 <= x <= params.region_length:
        raise ValueError(f"position {x} outside region [0, {params.region_length}]")
    return params.move_energy_rate * abs(x - params.initial_position)


def total_energy(x: float, gain: float, params: SystemParams) -> float:
    """Movement plus transmit energy over one block.

    MRC transmits at the full power budget, so the communication-phase energy
    does not depend on the gain.
    """
    dist, move_time = _travel(x, params)
    return (params.move_energy_rate * dist
            + params.max_tx_power * (params.block_duration - move_time))


def throughput(x: float, gain: float, params: SystemParams) -> float:
    """Bits/Hz delivered during the residual communication phase."""
    _, move_time = _travel(x, params)
    snr = mrc_snr(gain, params)
    return (params.block_duration - move_time) * math.log2(1.0 + snr)


def energy_efficiency(x: float, gain: float, params: SystemParams) -> EEBreakdown:
    """Assemble the full efficiency breakdown at one position."""
    dist, move_time = _travel(x, params)
    snr = mrc_snr(gain, params)
    time_left = params.block_duration - move_time
    rate = time_left * math.log2(1.0 + snr)
    energy = params.move_energy_rate * dist + params.max_tx_power * time_left
    return EEBreakdown(
        position=float(x),
        move_time=move_time,
        throughput=rate,
        energy=energy,
        ee=rate / energy,
        snr=snr,
        feasible=bool(rate >= params.min_throughput),
    )


def efficiency_curve(expansion: channel.GainExpansion, params: SystemParams, xs):
    """Vectorized (ee, rate, energy, feasible) along positions xs.

    Positions must lie inside the region; any spot the antenna cannot reach
    within the block gets zero communication time.
    """
    xs = np.asarray(xs, dtype=float)
    gains = np.maximum(channel.gain_eval(expansion, xs), 0.0)
    dist = np.abs(xs - params.initial_position)
    time_left = np.maximum(params.block_duration - dist / params.speed, 0.0)
    rate = time_left * np.log2(1.0 + params.max_tx_power * gains / params.noise_power)
    energy = params.move_energy_rate * dist + params.max_tx_power * time_left
    return rate / energy, rate, energy, rate >= params.min_throughput


def ee_upper_bound(expansion: channel.GainExpansion, params: SystemParams,
                   grid_resolution: float | None = None) -> tuple[float, float]:
    """Best-case efficiency and the position that realizes it.

    The bound assumes the rest position already sits at the gain argmax, so
    the whole block is spent communicating and no movement energy accrues.
    The argmax is located on a uniform grid (default resolution wavelength/200,
    at least 100 samples per gain oscillation) and refined by one golden
    polish; ties resolve to the smallest position.
    """
    if grid_resolution is None:
        grid_resolution = params.wavelength / 200.0
    if grid_resolution <= 0:
        raise ValueError(f"grid resolution must be positive, got {grid_resolution}")
    num = int(math.ceil(params.region_length / grid_resolution)) + 1
    x_best, gain_best = search.grid_polish_max(
        lambda t: channel.gain_eval(expansion, t),
        0.0, params.region_length, num, tol=params.wavelength * 1e-6,
    )
    bound = math.log2(1.0 + mrc_snr(max(gain_best, 0.0), params)) / params.max_tx_power
    return bound, x_best
