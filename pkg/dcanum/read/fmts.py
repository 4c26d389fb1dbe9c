from __future__ import annotations

import dataclasses
import pathlib
import struct

import numpy as np

from ..errors import FormatError
from .const import DATASET_MAGIC, DATASET_VERSION, DTYPE_CODES


#: magic, version, signal count, length, precision, seed, design digest
HEADER_STRUCT = struct.Struct("<4sHQHBQ16s")


@dataclasses.dataclass(frozen=True)
class DatasetHeader:
    """Metadata of a stored signal dataset"""
    #: number of signals
    n_signals: int
    #: time points per signal
    length: int
    #: precision flag (see :const:`DTYPE_CODES`)
    dtype_code: int
    #: seed the signals were generated with
    seed: int
    #: MD5 hex digest of the task design
    design_fingerprint: str
    #: file format version
    version: int = DATASET_VERSION

    @property
    def dtype(self):
        return DTYPE_CODES[self.dtype_code]

    @property
    def payload_size(self):
        return self.n_signals * self.length * self.dtype.itemsize


def decode_dataset(data: bytes):
    """Decode dataset bytes into a header and an (N, T) array"""
    if len(data) < HEADER_STRUCT.size:
        raise FormatError(f"Dataset header truncated ({len(data)} bytes)",
                          offset=len(data))
    magic, version, n_signals, length, code, seed, digest = \
        HEADER_STRUCT.unpack_from(data, 0)
    if magic != DATASET_MAGIC:
        raise FormatError(f"Bad dataset magic {magic!r}", offset=0)
    if version != DATASET_VERSION:
        raise FormatError(f"Unsupported dataset version {version}", offset=4)
    if code not in DTYPE_CODES:
        raise FormatError(f"Unknown precision flag {code}", offset=16)
    header = DatasetHeader(n_signals=n_signals,
                           length=length,
                           dtype_code=code,
                           seed=seed,
                           design_fingerprint=digest.hex(),
                           version=version)
    expected = HEADER_STRUCT.size + header.payload_size
    if len(data) < expected:
        raise FormatError(
            f"Dataset payload truncated: expected {expected} bytes, "
            f"got {len(data)}", offset=len(data))
    elif len(data) > expected:
        raise FormatError("Trailing bytes after dataset payload",
                          offset=expected)
    signals = np.frombuffer(data, dtype=header.dtype,
                            offset=HEADER_STRUCT.size,
                            count=n_signals * length)
    return header, signals.reshape(n_signals, length).copy()


def read_dataset(path: pathlib.Path | str):
    """Read a signal dataset file

    Returns
    -------
    header: DatasetHeader
    signals: np.ndarray
        (N, T) array in the stored precision
    """
    data = pathlib.Path(path).read_bytes()
    return decode_dataset(data)
