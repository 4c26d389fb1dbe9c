import functools

import numpy as np
from scipy import stats

from ..errors import DomainError


#: gamma shape of the positive response (mode at 5 s)
RESPONSE_SHAPE = 6.0
#: gamma shape of the undershoot (mode at 15 s)
UNDERSHOOT_SHAPE = 16.0
#: ratio of response to undershoot
UNDERSHOOT_RATIO = 6.0


def _double_gamma(t):
    return (stats.gamma.pdf(t, RESPONSE_SHAPE)
            - stats.gamma.pdf(t, UNDERSHOOT_SHAPE) / UNDERSHOOT_RATIO)


@functools.cache
def _peak_value():
    grid = np.linspace(0, 32, 320001)
    return float(np.max(_double_gamma(grid)))


def hrf(t):
    """Canonical double-gamma hemodynamic response, peak normalized to 1

    Parameters
    ----------
    t: float or ndarray
        Time after stimulus onset in seconds (must be >= 0)
    """
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise DomainError("The hemodynamic response is defined for t >= 0")
    value = _double_gamma(t_arr) / _peak_value()
    if np.ndim(t) == 0:
        return float(value)
    return value


def hrf_kernel(tr, duration=32.0):
    """Response sampled at multiples of the repetition time `tr`"""
    return hrf(np.arange(0, duration, tr))
