import os

import numpy as np
import pytest

DEMO_ENV = "PHASECHAIN_DEMO_FILE"


@pytest.fixture(scope="session")
def demo_motion_path():
    """Path to the public demo motion file, or skip.

    Point PHASECHAIN_DEMO_FILE at the demo capture (JSON or CSV) to enable
    the data-dependent reproduction tests.
    """
    path = os.environ.get(DEMO_ENV)
    if not path:
        pytest.skip(f"{DEMO_ENV} not set; demo-data tests skipped")
    if not os.path.exists(path):
        pytest.skip(f"{DEMO_ENV}={path} does not exist; demo-data tests skipped")
    return path


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=20260814))


def make_motion(positions, labels, frame_rate=30.0):
    from phasechain import MotionSequence

    return MotionSequence(np.asarray(positions, dtype=float), labels, frame_rate)
