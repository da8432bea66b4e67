"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from maee import PathAngles, PathResponseMatrix, SystemParams, sample_instance


@pytest.fixture
def params():
    return SystemParams()


def make_instance(seed, params=None):
    """Random instance from a fixed seed, default scenario unless given."""
    params = params or SystemParams()
    return sample_instance(params, np.random.default_rng(seed))


def hand_instance():
    """Two paths, one antenna, unit responses, virtual angles 0 and 1/2.

    The gain series has a single cross term with unit magnitude and zero
    phase, so every series quantity is hand-computable.
    """
    angles = PathAngles(
        elevation=np.array([0.0, np.pi / 2]),
        azimuth=np.array([0.0, np.pi / 3]),
        virtual_aoa=np.array([0.0, 0.5]),
    )
    return PathResponseMatrix(np.array([[1.0 + 0j], [1.0 + 0j]]), angles)


def single_path_instance(response=2.0, num_antennas=3):
    """One path with zero virtual angle: the gain is position independent."""
    angles = PathAngles(
        elevation=np.array([0.0]),
        azimuth=np.array([0.0]),
        virtual_aoa=np.array([0.0]),
    )
    entries = np.full((1, num_antennas), response, dtype=complex)
    return PathResponseMatrix(entries, angles)


def direct_gain(instance, wavelength, xs):
    """Oracle: squared channel norm straight from the matrix definition."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    steering = np.exp(2j * np.pi / wavelength
                      * np.outer(xs, instance.angles.virtual_aoa))
    h = steering @ instance.entries.conj()
    return np.sum(np.abs(h) ** 2, axis=1)
