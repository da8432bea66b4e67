"""Field-response channel model for a single movable receive antenna.

A propagation environment is a fixed set of L plane-wave paths, each with an
elevation/azimuth arrival direction and one complex response coefficient per
base-station antenna. The channel seen at antenna position x is the
conjugate-transposed path-response matrix applied to a unit-modulus steering
vector whose phases grow linearly in x. The resulting power gain collapses to
a cosine series in x (one term per ordered path pair) whose coefficients are
precomputed once per environment; all derivative and curvature quantities
used by the position optimizer come from that series.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .params import SystemParams

# Lower bound on the curvature constant so quadratic surrogates stay
# well-defined when the gain is position independent (single path).
CURVATURE_FLOOR = 1e-12


@dataclass(frozen=True)
class PathAngles:
    """Per-path arrival geometry.

    The virtual angles sin(elevation) * cos(azimuth) are stored rather than
    recomputed so a serialized instance replays exactly.
    """

    elevation: np.ndarray
    azimuth: np.ndarray
    virtual_aoa: np.ndarray

    def __post_init__(self) -> None:
        for name in ("elevation", "azimuth", "virtual_aoa"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        num = self.elevation.shape[0]
        if self.elevation.ndim != 1 or num < 1:
            raise ValueError("need at least one path")
        if self.azimuth.shape != (num,) or self.virtual_aoa.shape != (num,):
            raise ValueError("angle arrays must share one length")
        if np.any(np.abs(self.virtual_aoa) > 1.0 + 1e-12):
            raise ValueError("virtual angles must lie in [-1, 1]")

    @property
    def num_paths(self) -> int:
        return self.elevation.shape[0]

    @classmethod
    def from_spherical(cls, elevation, azimuth) -> "PathAngles":
        elevation = np.asarray(elevation, dtype=float)
        azimuth = np.asarray(azimuth, dtype=float)
        return cls(elevation, azimuth, np.sin(elevation) * np.cos(azimuth))


@dataclass(frozen=True)
class PathResponseMatrix:
    """L x N complex response coefficients plus the path arrival angles."""

    entries: np.ndarray
    angles: PathAngles

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2:
            raise ValueError("entries must be a 2-D matrix")
        if entries.shape[0] != self.angles.num_paths:
            raise ValueError("row count must equal the number of paths")
        if not np.all(np.isfinite(entries)):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "entries", entries)

    @property
    def num_paths(self) -> int:
        return self.entries.shape[0]

    @property
    def num_antennas(self) -> int:
        return self.entries.shape[1]


def sample_instance(params: SystemParams, rng: np.random.Generator) -> PathResponseMatrix:
    """Draw a random propagation environment.

    Response coefficients are i.i.d. circularly symmetric complex Gaussian
    with variance pathloss_ref * distance**-pathloss_exp / num_paths; the
    elevation and azimuth angles are i.i.d. uniform on [0, pi]. The draw
    order is fixed so a seeded generator reproduces an instance bit for bit.
    """
    num_paths, num_antennas = params.num_paths, params.num_bs_antennas
    elevation = rng.uniform(0.0, np.pi, num_paths)
    azimuth = rng.uniform(0.0, np.pi, num_paths)
    scale = np.sqrt(params.path_gain_variance / 2.0)
    real = rng.standard_normal((num_paths, num_antennas))
    imag = rng.standard_normal((num_paths, num_antennas))
    return PathResponseMatrix(
        entries=(real + 1j * imag) * scale,
        angles=PathAngles.from_spherical(elevation, azimuth),
    )


def field_response(angles: PathAngles, wavelength: float, x: float) -> np.ndarray:
    """Unit-modulus steering vector exp(j 2 pi x virtual_aoa / wavelength)."""
    if wavelength <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    return np.exp(2j * np.pi / wavelength * x * angles.virtual_aoa)


def channel_vector(instance: PathResponseMatrix, wavelength: float, x: float) -> np.ndarray:
    """Channel vector at position x, one entry per base-station antenna."""
    return instance.entries.conj().T @ field_response(instance.angles, wavelength, x)


@dataclass(frozen=True)
class GainExpansion:
    """Closed-form cosine series of the channel power gain.

    gain(x) = constant
              + sum_k 2 |cross_k| cos(2 pi x delta_aoa_k / wavelength + angle(cross_k))

    with one term per ordered path pair a < b: cross_k correlates the two
    paths' response rows and delta_aoa_k is the virtual-angle difference.
    """

    constant: float
    cross: np.ndarray
    delta_aoa: np.ndarray
    pair_a: np.ndarray
    pair_b: np.ndarray
    wavelength: float
    cross_mag: np.ndarray = field(init=False)
    cross_phase: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cross", np.asarray(self.cross, dtype=complex))
        object.__setattr__(self, "delta_aoa", np.asarray(self.delta_aoa, dtype=float))
        object.__setattr__(self, "cross_mag", np.abs(self.cross))
        object.__setattr__(self, "cross_phase", np.angle(self.cross))

    @property
    def num_pairs(self) -> int:
        return self.cross.shape[0]


def build_expansion(instance: PathResponseMatrix, wavelength: float) -> GainExpansion:
    """Precompute the gain series coefficients for one environment."""
    if wavelength <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    entries = instance.entries
    pair_a, pair_b = np.triu_indices(instance.num_paths, k=1)
    if pair_a.size:
        cross = np.einsum("kn,kn->k", entries[pair_a], entries[pair_b].conj())
    else:
        cross = np.zeros(0, dtype=complex)
    virtual = instance.angles.virtual_aoa
    return GainExpansion(
        constant=float(np.sum(np.abs(entries) ** 2)),
        cross=cross,
        delta_aoa=virtual[pair_b] - virtual[pair_a],
        pair_a=pair_a,
        pair_b=pair_b,
        wavelength=wavelength,
    )


def _phases(expansion: GainExpansion, x_arr: np.ndarray) -> np.ndarray:
    k = 2.0 * np.pi / expansion.wavelength
    return np.multiply.outer(x_arr, k * expansion.delta_aoa) + expansion.cross_phase


def gain_eval(expansion: GainExpansion, x) -> float | np.ndarray:
    """Channel power gain at position(s) x via the precomputed series."""
    x_arr = np.asarray(x, dtype=float)
    if expansion.num_pairs == 0:
        out = np.full(x_arr.shape, expansion.constant)
    else:
        out = expansion.constant + np.cos(_phases(expansion, x_arr)) @ (2.0 * expansion.cross_mag)
    return float(out) if out.ndim == 0 else out


def gain_derivative(expansion: GainExpansion, tx_power: float, x) -> float | np.ndarray:
    """First derivative of tx_power * gain with respect to position."""
    if tx_power <= 0:
        raise ValueError(f"tx_power must be positive, got {tx_power}")
    x_arr = np.asarray(x, dtype=float)
    if expansion.num_pairs == 0:
        out = np.zeros(x_arr.shape)
    else:
        coeff = (4.0 * np.pi * tx_power / expansion.wavelength
                 * expansion.cross_mag * expansion.delta_aoa)
        out = -np.sin(_phases(expansion, x_arr)) @ coeff
    return float(out) if out.ndim == 0 else out


def gain_second_derivative(expansion: GainExpansion, tx_power: float, x) -> float | np.ndarray:
    """Second derivative of tx_power * gain with respect to position."""
    if tx_power <= 0:
        raise ValueError(f"tx_power must be positive, got {tx_power}")
    x_arr = np.asarray(x, dtype=float)
    if expansion.num_pairs == 0:
        out = np.zeros(x_arr.shape)
    else:
        coeff = (8.0 * np.pi**2 * tx_power / expansion.wavelength**2
                 * expansion.cross_mag * expansion.delta_aoa**2)
        out = -np.cos(_phases(expansion, x_arr)) @ coeff
    return float(out) if out.ndim == 0 else out


def curvature_bound(expansion: GainExpansion, tx_power: float) -> float:
    """Constant dominating |second derivative| of the scaled gain everywhere.

    Sum of the per-pair curvature amplitudes, floored at CURVATURE_FLOOR so
    the quadratic surrogates built on it never degenerate.
    """
    if tx_power <= 0:
        raise ValueError(f"tx_power must be positive, got {tx_power}")
    total = float(np.sum(8.0 * np.pi**2 * tx_power / expansion.wavelength**2
                         * expansion.cross_mag * expansion.delta_aoa**2))
    return max(total, CURVATURE_FLOOR)


def save_instance(instance: PathResponseMatrix, wavelength: float, path) -> None:
    """Write an instance as flat text for test-fixture replay.

    Format: header "L N wavelength", then L lines of angle triples
    (elevation azimuth virtual), then L*N complex entries "re,im" row major.
    Floats are written with repr so the round trip is exact.
    """
    lines = [f"{instance.num_paths} {instance.num_antennas} {float(wavelength)!r}"]
    ang = instance.angles
    for l in range(instance.num_paths):
        lines.append(
            f"{float(ang.elevation[l])!r} {float(ang.azimuth[l])!r} {float(ang.virtual_aoa[l])!r}"
        )
    for value in instance.entries.ravel():
        lines.append(f"{float(value.real)!r},{float(value.imag)!r}")
    with open(path, "w", encoding="ascii") as handle:
        handle.write("\n".join(lines) + "\n")


def load_instance(path) -> tuple[PathResponseMatrix, float]:
    """Read an instance written by save_instance; returns (instance, wavelength)."""
    with open(path, "r", encoding="ascii") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    header = lines[0].split()
    num_paths, num_antennas, wavelength = int(header[0]), int(header[1]), float(header[2])
    if len(lines) != 1 + num_paths + num_paths * num_antennas:
        raise ValueError(f"malformed instance file {os.fspath(path)!r}")
    triples = np.array([[float(v) for v in lines[1 + l].split()] for l in range(num_paths)])
    entries = np.empty((num_paths, num_antennas), dtype=complex)
    flat = entries.ravel()
    for i, line in enumerate(lines[1 + num_paths:]):
        re_part, im_part = line.split(",")
        flat[i] = complex(float(re_part), float(im_part))
    angles = PathAngles(triples[:, 0], triples[:, 1], triples[:, 2])
    return PathResponseMatrix(entries, angles), wavelength
