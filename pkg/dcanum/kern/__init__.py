# flake8: noqa: F401
"""Numeric primitives of the convolutional autoencoder

All kernels operate on 2D arrays of shape (channels, length) and are
pure functions: the same inputs always produce bit-identical outputs.
"""
from .conv import ConvParams, conv1d_forward, conv1d_backward
from .dense import DenseParams, dense_forward, dense_backward
from .pool import SwitchMask, maxpool_forward, unpool_switch, upsample_nearest
