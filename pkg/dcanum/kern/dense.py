from __future__ import annotations

import dataclasses

import numpy as np

from ..errors import ConfigError, ShapeError


@dataclasses.dataclass(frozen=True)
class DenseParams:
    """Weights (in_dim, out_dim) and bias (out_dim,) of a dense layer"""
    weights: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        if self.weights.ndim != 2:
            raise ShapeError(
                f"Dense weights must be 2D, got {self.weights.shape}")
        if self.bias.shape != (self.weights.shape[1],):
            raise ShapeError(
                f"Bias shape {self.bias.shape} does not match output "
                f"dimension {self.weights.shape[1]}")

    @property
    def in_dim(self):
        return self.weights.shape[0]

    @property
    def out_dim(self):
        return self.weights.shape[1]


def _check(z_flat, d, activation):
    if activation not in ("relu", "linear"):
        raise ConfigError(f"Unknown activation '{activation}'")
    if z_flat.shape != (d.in_dim,):
        raise ShapeError(
            f"Input of shape {z_flat.shape} does not match dense layer "
            f"input dimension {d.in_dim}")


def dense_forward(z_flat: np.ndarray,
                  d: DenseParams,
                  activation: str = "linear") -> np.ndarray:
    """Return `activation(z_flat @ W + C)`"""
    _check(z_flat, d, activation)
    out = z_flat @ d.weights + d.bias
    if activation == "relu":
        np.maximum(out, 0, out=out)
    return out


def dense_backward(z_flat: np.ndarray,
                   d: DenseParams,
                   activation: str,
                   grad_out: np.ndarray,
                   pre: np.ndarray = None,
                   ) -> tuple[np.ndarray, DenseParams]:
    """Analytic gradient of :func:`dense_forward`

    Returns the gradient with respect to `z_flat` and a
    :class:`DenseParams` holding the weight and bias gradients.
    """
    _check(z_flat, d, activation)
    if grad_out.shape != (d.out_dim,):
        raise ShapeError(
            f"Output gradient of shape {grad_out.shape} does not match "
            f"dense layer output dimension {d.out_dim}")
    if activation == "relu":
        if pre is None:
            pre = z_flat @ d.weights + d.bias
        grad_a = np.where(pre > 0, grad_out, 0).astype(grad_out.dtype)
    else:
        grad_a = grad_out
    grad_z = d.weights @ grad_a
    grad_w = np.outer(z_flat, grad_a)
    return grad_z, DenseParams(weights=grad_w, bias=grad_a.copy())
