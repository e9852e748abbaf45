import os
import sys

import numpy as np
import pytest

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, _ROOT)

from spiral_toolbox.geometry import profiles
from spiral_toolbox.spiral_toolbox_utils import lk


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path):
    """Never read or write the per-user ini file"""
    lk.use_settings_file(str(tmp_path / "settings.ini"))
    yield
    lk.reset_settings()


def make_pair(kappa, tau, s_min, s_max):
    """kappa / tau as (a, b) for linear or (a, b, c, d) for rational-linear profiles"""
    return profiles.ProfilePair(profiles.make_profile(*kappa), profiles.make_profile(*tau), s_min, s_max)


@pytest.fixture
def euler_pair():
    return make_pair((1.0, 1.0), (2.0, 0.0), 0.0, 5.0)


@pytest.fixture
def helix_pair():
    return make_pair((0.0, 1.0), (0.0, 0.5), 0.0, 10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
