from __future__ import annotations

import dataclasses

import numpy as np

from ..errors import ConfigError, CorruptionError, ShapeError


@dataclasses.dataclass(frozen=True)
class SwitchMask:
    """Argmax locations recorded during max-pooling

    `indices[c, j]` is the position in the pre-pool tensor (channel `c`)
    that won pooling window `j`.
    """
    #: integer array of shape (channels, pooled_length)
    indices: np.ndarray
    #: length of the pre-pool tensor
    length: int
    #: pooling window size
    pool: int

    @property
    def channels(self):
        return self.indices.shape[0]

    @property
    def pooled_length(self):
        return self.indices.shape[1]


def maxpool_forward(x: np.ndarray, pool: int = 2
                    ) -> tuple[np.ndarray, SwitchMask]:
    """Max-pool along the time axis and memorize the switches

    Windows do not overlap. If the length of `x` is not a multiple of
    `pool`, trailing slots are padded with -inf (ceil mode) so that
    they never win on finite data. Ties go to the lowest index.

    Parameters
    ----------
    x: 2d ndarray
        Tensor of shape (channels, length)
    pool: int
        Pooling window size

    Returns
    -------
    pooled: 2d ndarray
        Tensor of shape (channels, ceil(length / pool))
    switches: SwitchMask
        Winning pre-pool index for every pooled slot
    """
    if pool < 1:
        raise ConfigError(f"Pool size must be >= 1, got {pool}")
    if x.ndim != 2:
        raise ShapeError(f"Expected (channels, length) tensor, got {x.shape}")
    channels, length = x.shape
    pooled_length = -(-length // pool)
    padded = np.full((channels, pooled_length * pool), -np.inf,
                     dtype=np.result_type(x.dtype, np.float32))
    padded[:, :length] = x
    windows = padded.reshape(channels, pooled_length, pool)
    # np.argmax returns the first occurrence for ties
    arg = np.argmax(windows, axis=2)
    indices = arg + pool * np.arange(pooled_length)[np.newaxis, :]
    pooled = np.take_along_axis(padded, indices, axis=1).astype(x.dtype)
    return pooled, SwitchMask(indices=indices, length=length, pool=pool)


def unpool_switch(pooled: np.ndarray,
                  switches: SwitchMask,
                  out_length: int = None) -> np.ndarray:
    """Put every pooled value back at its recorded switch position

    All other slots are zero.
    """
    if out_length is None:
        out_length = switches.length
    if pooled.shape != switches.indices.shape:
        raise ShapeError(
            f"Pooled tensor of shape {pooled.shape} does not match "
            f"switches of shape {switches.indices.shape}")
    if switches.indices.size and switches.indices.max() >= out_length:
        raise CorruptionError(
            f"Switch index {switches.indices.max()} does not fit into "
            f"output length {out_length}")
    out = np.zeros((pooled.shape[0], out_length), dtype=pooled.dtype)
    np.put_along_axis(out, switches.indices, pooled, axis=1)
    return out


def maxpool_backward(grad_pooled: np.ndarray,
                     switches: SwitchMask) -> np.ndarray:
    """Route the pooled gradient to the switch positions"""
    return unpool_switch(grad_pooled, switches, switches.length)


def unpool_backward(grad_out: np.ndarray,
                    switches: SwitchMask) -> np.ndarray:
    """Gather the gradient at the switch positions"""
    if grad_out.shape != (switches.channels, switches.length):
        raise ShapeError(
            f"Gradient of shape {grad_out.shape} does not match unpooled "
            f"shape {(switches.channels, switches.length)}")
    return np.take_along_axis(grad_out, switches.indices, axis=1)


def upsample_nearest(pooled: np.ndarray,
                     factor: int,
                     out_length: int) -> np.ndarray:
    """Repeat every value `factor` times and truncate to `out_length`

    This is the fallback for unpooling when no switches are available.
    """
    if factor < 1:
        raise ConfigError(f"Up-sampling factor must be >= 1, got {factor}")
    length = pooled.shape[1]
    lo = factor * (length - 1) + 1
    hi = factor * length
    if not lo <= out_length <= hi:
        raise ShapeError(
            f"Output length {out_length} not in [{lo}, {hi}] for "
            f"{length} pooled slots and factor {factor}")
    return np.repeat(pooled, factor, axis=1)[:, :out_length]
