import numpy as np
import pytest

from contourdet.series import LaurentSeries


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def random_unit_poly(rng, deg, scale=0.8):
    """``1 + sum_d c_d v^d`` with ``|c_d| <= scale / deg``."""
    if deg == 0:
        return np.array([1.0 + 0j])
    r = scale / deg * np.sqrt(rng.uniform(size=deg))
    c = r * np.exp(2j * np.pi * rng.uniform(size=deg))
    return np.concatenate([[1.0 + 0j], c])


def series_list(polys, trunc):
    return [LaurentSeries.poly(c, trunc) for c in polys]
