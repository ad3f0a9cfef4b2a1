import numpy as np
import pytest

from archliq import (
    FgnSquared,
    ModelParams,
    NoiseMoments,
    SeedSpec,
    WhiteSquared,
)


@pytest.fixture
def gaussian_moments():
    return NoiseMoments.gaussian()


@pytest.fixture
def default_params():
    """The parameter triple used throughout the replication experiments."""
    return ModelParams(alpha0=1.0, alpha1=0.1, l1=0.5)


@pytest.fixture
def fgn_third():
    return FgnSquared(hurst=1.0 / 3.0)


@pytest.fixture
def white():
    return WhiteSquared()


@pytest.fixture
def seed():
    return SeedSpec(master_seed=20260809, stream_index=0)


def batch_standard_error(values: np.ndarray, batches: int = 100) -> float:
    """Standard error of the mean of a dependent series, via batch means."""
    values = np.asarray(values)
    usable = (values.size // batches) * batches
    means = values[:usable].reshape(batches, -1).mean(axis=1)
    return float(means.std(ddof=1) / np.sqrt(batches))
