from __future__ import annotations

import dataclasses

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import ConfigError, ShapeError


@dataclasses.dataclass(frozen=True)
class ConvParams:
    """Filters and biases of one 1D convolutional layer

    `weights` has the shape (out_channels, in_channels, kernel_len),
    `bias` the shape (out_channels,). Both may be views into a larger
    parameter vector.
    """
    weights: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        if self.weights.ndim != 3:
            raise ShapeError(
                f"Convolution weights must be 3D, got {self.weights.shape}")
        if self.bias.shape != (self.weights.shape[0],):
            raise ShapeError(
                f"Bias shape {self.bias.shape} does not match "
                f"{self.weights.shape[0]} output channels")

    @property
    def out_channels(self):
        return self.weights.shape[0]

    @property
    def in_channels(self):
        return self.weights.shape[1]

    @property
    def kernel_len(self):
        return self.weights.shape[2]


def _check_activation(activation):
    if activation not in ("relu", "linear"):
        raise ConfigError(f"Unknown activation '{activation}'")


def _windows(x, kernel_len):
    """Zero-padded sliding windows, shape (channels, length, kernel_len)"""
    pad = (kernel_len - 1) // 2
    xp = np.pad(x, ((0, 0), (pad, pad)))
    return sliding_window_view(xp, kernel_len, axis=1)


def _check_input(x, p):
    if p.kernel_len % 2 == 0:
        raise ConfigError(
            f"Kernel length must be odd for 'same' padding, "
            f"got {p.kernel_len}")
    if x.ndim != 2 or x.shape[0] != p.in_channels:
        raise ShapeError(
            f"Input of shape {x.shape} does not match a convolution with "
            f"{p.in_channels} input channels")


def conv1d_preactivation(x, p):
    """Return `p * x + b` (cross-correlation, 'same' zero padding)"""
    _check_input(x, p)
    win = _windows(x, p.kernel_len)
    out = np.tensordot(p.weights, win, axes=([1, 2], [0, 2]))
    out += p.bias[:, np.newaxis]
    return out


def conv1d_forward(x: np.ndarray,
                   p: ConvParams,
                   activation: str = "relu") -> np.ndarray:
    """Convolve `x` with the filters in `p` and apply `activation`

    Parameters
    ----------
    x: 2d ndarray
        Input tensor of shape (in_channels, length)
    p: ConvParams
        Layer parameters; `kernel_len` must be odd
    activation: str
        Either "relu" or "linear"

    Returns
    -------
    out: 2d ndarray
        Output tensor of shape (out_channels, length)
    """
    _check_activation(activation)
    out = conv1d_preactivation(x, p)
    if activation == "relu":
        np.maximum(out, 0, out=out)
    return out


def conv1d_backward(x: np.ndarray,
                    p: ConvParams,
                    activation: str,
                    grad_out: np.ndarray,
                    pre: np.ndarray = None,
                    ) -> tuple[np.ndarray, ConvParams]:
    """Analytic gradient of :func:`conv1d_forward`

    Parameters
    ----------
    x: 2d ndarray
        Input of the forward call
    p: ConvParams
        Parameters of the forward call
    activation: str
        Activation of the forward call
    grad_out: 2d ndarray
        Gradient of the loss with respect to the layer output
    pre: 2d ndarray
        Pre-activation computed during the forward pass; recomputed
        if not given (only needed for "relu")

    Returns
    -------
    grad_x: 2d ndarray
        Gradient with respect to `x`
    grad_p: ConvParams
        Gradients with respect to weights and bias
    """
    _check_activation(activation)
    _check_input(x, p)
    if grad_out.shape != (p.out_channels, x.shape[1]):
        raise ShapeError(
            f"Output gradient of shape {grad_out.shape} does not match "
            f"forward output {(p.out_channels, x.shape[1])}")
    if activation == "relu":
        if pre is None:
            pre = conv1d_preactivation(x, p)
        # subgradient 0 at exactly 0
        grad_a = np.where(pre > 0, grad_out, 0).astype(grad_out.dtype)
    else:
        grad_a = grad_out
    k = p.kernel_len
    grad_w = np.tensordot(grad_a, _windows(x, k), axes=([1], [1]))
    grad_b = grad_a.sum(axis=1)
    # full correlation with the flipped kernels
    grad_x = np.tensordot(p.weights[:, :, ::-1], _windows(grad_a, k),
                          axes=([0, 2], [0, 2]))
    return grad_x, ConvParams(weights=grad_w, bias=grad_b)
