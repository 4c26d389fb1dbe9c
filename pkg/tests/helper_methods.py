import os

import numpy as np

from dcanum.data import (
    SyntheticConfig, generate_dataset, motor_design, normalize_batch
)
from dcanum.model import ModelConfig, ParamBundle, build_model


def small_config(input_length=64, lambda_reg=0.006):
    """Two-layer model that trains in seconds"""
    return ModelConfig(input_length=input_length,
                       encoder=((4, 5), (4, 3)),
                       decoder=((4, 3), (1, 5)),
                       pool=2,
                       lambda_reg=lambda_reg)


def randomized_params(cfg, seed=0, dtype=np.float64):
    """Parameters with random nonzero biases (away from ReLU kinks)"""
    params = build_model(cfg, seed=seed, dtype=dtype)
    rng = np.random.default_rng(seed + 1)
    flat = params.flat.copy()
    flat += rng.normal(0, 0.1, size=flat.size)
    return ParamBundle(params.shape_map, flat.astype(dtype))


def numeric_gradient(func, flat, indices, eps=1e-6):
    """Central finite differences of `func(flat)` at `indices`"""
    grads = np.zeros(len(indices), dtype=np.float64)
    for ii, idx in enumerate(indices):
        orig = flat[idx]
        flat[idx] = orig + eps
        fp = func(flat)
        flat[idx] = orig - eps
        fm = func(flat)
        flat[idx] = orig
        grads[ii] = (fp - fm) / (2 * eps)
    return grads


def make_signals(n_signals=64, length=64, noise_sigma=0.3, seed=42):
    """Normalized synthetic signals and their design"""
    design = motor_design(length=length)
    syn = generate_dataset(design, SyntheticConfig(n_signals=n_signals,
                                                   noise_sigma=noise_sigma,
                                                   seed=seed))
    signals, _ = normalize_batch(syn.signals)
    return signals, design


def cpu_count():
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def random_config(rng):
    """Random valid layer plan with short signals"""
    depth = int(rng.integers(1, 4))
    encoder = tuple((int(rng.integers(1, 6)), int(2 * rng.integers(0, 4) + 1))
                    for _ in range(depth))
    decoder = tuple((encoder[depth - 2 - ii][0],
                     int(2 * rng.integers(0, 4) + 1))
                    for ii in range(depth - 1))
    decoder += ((1, encoder[0][1]),)
    return ModelConfig(input_length=int(rng.integers(4, 40)),
                       encoder=encoder, decoder=decoder,
                       pool=int(rng.integers(1, 4)),
                       lambda_reg=float(rng.uniform(0, 0.1)))
