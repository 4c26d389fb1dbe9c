from __future__ import annotations

import dataclasses
import logging

import numpy as np
from scipy import linalg

from ..errors import ConfigError, DomainError, ShapeError
from .design import TaskDesign, design_regressors


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SyntheticConfig:
    """Parameters of the synthetic fMRI-like signal generator"""
    #: number of signals (voxels) to generate
    n_signals: int = 2000
    #: maximum number of events a single signal responds to
    max_active: int = 2
    #: range of the nonnegative mixing weights of active events
    weight_range: tuple = (0.5, 1.5)
    #: standard deviation of the additive gaussian noise
    noise_sigma: float = 0.3
    #: maximum absolute slope of the linear drift over the run
    drift: float = 0.5
    #: random seed
    seed: int = 42

    def validate(self, event_count=None):
        if self.n_signals < 0:
            raise ConfigError(f"Negative number of signals: {self.n_signals}")
        if self.max_active < 0:
            raise ConfigError("max_active must not be negative")
        if event_count is not None and self.max_active > event_count:
            raise ConfigError(
                f"Cannot activate {self.max_active} of {event_count} events")
        lo, hi = self.weight_range
        if lo < 0 or hi < lo:
            raise ConfigError(f"Invalid weight range {self.weight_range}")
        if self.noise_sigma < 0 or self.drift < 0:
            raise ConfigError("Noise and drift must not be negative")


@dataclasses.dataclass
class SyntheticData:
    #: raw signals (N, T)
    signals: np.ndarray
    #: ground-truth mixing weights (N, E)
    weights: np.ndarray
    #: noise- and drift-free part of the signals (N, T)
    clean: np.ndarray


def sample_weights(cfg: SyntheticConfig, event_count, rng):
    """Draw sparse nonnegative mixing weights (N, E)"""
    weights = np.zeros((cfg.n_signals, event_count), dtype=np.float64)
    lo, hi = cfg.weight_range
    n_active = rng.integers(0, cfg.max_active + 1, size=cfg.n_signals)
    for ii, na in enumerate(n_active):
        if na:
            events = rng.choice(event_count, size=na, replace=False)
            weights[ii, events] = rng.uniform(lo, hi, size=na)
    return weights


def generate_dataset(design: TaskDesign,
                     cfg: SyntheticConfig,
                     weights: np.ndarray = None) -> SyntheticData:
    """Generate raw signals as sparse mixtures of design regressors

    Each signal is `weights @ regressors` plus a linear drift with
    a random slope and additive gaussian noise.

    Parameters
    ----------
    design:
        task design whose regressors are mixed
    cfg:
        generator configuration
    weights:
        optional (N, E) mixing weights; if not given, sparse weights
        are drawn according to `cfg`
    """
    cfg.validate(design.event_count)
    rng = np.random.default_rng(cfg.seed)
    regs = design_regressors(design)
    if weights is None:
        weights = sample_weights(cfg, design.event_count, rng)
    else:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (cfg.n_signals, design.event_count):
            raise ShapeError(
                f"Mixing weights must have shape "
                f"{(cfg.n_signals, design.event_count)}, got {weights.shape}")
        if np.any(weights < 0):
            raise ConfigError("Mixing weights must be nonnegative")
    clean = weights @ regs
    ramp = np.linspace(-1, 1, design.length)
    slopes = rng.uniform(-cfg.drift, cfg.drift, size=(cfg.n_signals, 1))
    noise = rng.normal(0, cfg.noise_sigma,
                       size=(cfg.n_signals, design.length))
    signals = clean + slopes * ramp + noise
    logger.debug(f"Generated {cfg.n_signals} signals of length "
                 f"{design.length} (noise {cfg.noise_sigma})")
    return SyntheticData(signals=signals, weights=weights, clean=clean)


def recover_weights(signals: np.ndarray, design: TaskDesign) -> np.ndarray:
    """Least-squares mixing weights (N, E) of `signals` onto the regressors"""
    signals = np.atleast_2d(np.asarray(signals, dtype=np.float64))
    regs = design_regressors(design)
    if signals.shape[1] != regs.shape[1]:
        raise ShapeError(f"Signals of length {signals.shape[1]} do not match "
                         f"the {regs.shape[1]} scans of the design")
    solution, _, _, _ = linalg.lstsq(regs.T, signals.T)
    return solution.T


def _is_degenerate(x, std):
    return std <= 1e-10 * max(1.0, abs(float(np.mean(x))))


def normalize(x: np.ndarray) -> np.ndarray:
    """Return the z-scored signal (mean 0, population variance 1)"""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError(f"Expected a 1D signal, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("Cannot normalize a signal with non-finite values")
    std = np.std(x)
    if _is_degenerate(x, std):
        raise DomainError("Cannot normalize a zero-variance signal")
    return (x - np.mean(x)) / std


def normalize_batch(signals: np.ndarray):
    """Z-score every row of `signals`, dropping degenerate rows

    Returns
    -------
    normalized: np.ndarray
        (M, T) normalized signals
    kept: np.ndarray
        indices (into `signals`) of the M kept rows
    """
    signals = np.asarray(signals, dtype=np.float64)
    if signals.ndim != 2:
        raise ShapeError(f"Expected (N, T) signals, got {signals.shape}")
    mean = np.mean(signals, axis=1, keepdims=True)
    std = np.std(signals, axis=1, keepdims=True)
    finite = np.all(np.isfinite(signals), axis=1)
    degenerate = std[:, 0] <= 1e-10 * np.maximum(1.0, np.abs(mean[:, 0]))
    kept = np.flatnonzero(finite & ~degenerate)
    rejected = signals.shape[0] - kept.size
    if rejected:
        logger.info(f"Rejected {rejected} zero-variance or non-finite "
                    f"signals during normalization")
    normalized = (signals[kept] - mean[kept]) / std[kept]
    return normalized, kept
