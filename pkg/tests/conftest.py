import os

import pytest
from hypothesis import HealthCheck, settings

from nearperfect.sequence import Sequence

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

LONG = os.environ.get("NPS_LONG") == "1"


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long search; set NPS_LONG=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def seq(p, exps):
    return Sequence(p, tuple(exps))


# witnesses printed in the source literature, as exponent lists
W5 = seq(3, [2, 2, 2, 2, 0])
W17 = seq(3, [2, 2, 2, 0, 2, 0, 0, 1, 0, 0, 2, 0, 2, 2, 2, 0, 0])
W13_ALMOST = seq(3, [None, 2, 2, 2, 0, 2, 1, 1, 2, 0, 2, 2, 2])
BINARY_2 = seq(2, [1, 0])


@pytest.fixture
def witnesses():
    return {"w5": W5, "w17": W17, "w13": W13_ALMOST, "bin2": BINARY_2}
