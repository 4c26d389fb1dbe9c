import numpy as np
import pytest

from dcanum.data import hrf, hrf_kernel
from dcanum.errors import DomainError


def test_hrf_zero():
    assert hrf(0) == 0
    assert isinstance(hrf(0.0), float)


def test_hrf_peak():
    t = np.linspace(0, 32, 3201)
    resp = hrf(t)
    assert np.isclose(np.max(resp), 1, atol=1e-6)
    assert np.isclose(t[np.argmax(resp)], 5.0, atol=0.02)


def test_hrf_undershoot_and_tail():
    t = np.linspace(0, 32, 3201)
    resp = hrf(t)
    # undershoot after the peak
    assert np.min(resp[t > 10]) < 0
    assert abs(hrf(32.0)) < 0.01


@pytest.mark.parametrize("t", [-0.1, -5, np.nan])
def test_hrf_domain(t):
    with pytest.raises(DomainError):
        hrf(t)


def test_hrf_array_domain():
    with pytest.raises(DomainError):
        hrf(np.array([0, 1, -1]))


def test_hrf_kernel():
    kern = hrf_kernel(0.72)
    assert kern.shape == (45,)
    assert kern[0] == 0
    assert np.all(kern <= 1)
