import numpy as np
import pytest

from wkb_spectra.core import UnitsContext


@pytest.fixture
def units():
    return UnitsContext()


@pytest.fixture
def rng():
    # fixed seed: failures must reproduce bit-for-bit
    return np.random.default_rng(20260819)
