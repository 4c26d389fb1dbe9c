from __future__ import annotations

import pathlib

import numpy as np

from ..errors import ShapeError
from ..read.const import DATASET_MAGIC, DATASET_VERSION, dtype_to_code
from ..read.fmts import HEADER_STRUCT


def encode_dataset(signals: np.ndarray, seed: int,
                   design_fingerprint: str) -> bytes:
    if signals.ndim != 2:
        raise ShapeError(f"Expected (N, T) signals, got {signals.shape}")
    code = dtype_to_code(signals.dtype)
    n_signals, length = signals.shape
    header = HEADER_STRUCT.pack(DATASET_MAGIC,
                                DATASET_VERSION,
                                n_signals,
                                length,
                                code,
                                int(seed),
                                bytes.fromhex(design_fingerprint))
    payload = np.ascontiguousarray(
        signals, dtype=signals.dtype.newbyteorder("<")).tobytes()
    return header + payload


def write_dataset(path: pathlib.Path | str, signals: np.ndarray, seed: int,
                  design_fingerprint: str):
    """Write an (N, T) float32 or float64 signal array to `path`"""
    path = pathlib.Path(path)
    data = encode_dataset(signals, seed, design_fingerprint)
    tmp = path.with_name(path.name + "~")
    tmp.write_bytes(data)
    tmp.replace(path)
    return path
