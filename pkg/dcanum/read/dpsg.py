from __future__ import annotations

import pathlib
import struct

import numpy as np

from ..errors import ConfigError, FormatError
from ..model import ModelConfig, ParamBundle, ShapeMap
from .const import DTYPE_CODES, MODEL_MAGIC, MODEL_VERSION


#: magic, version, length of the model identifier
MODEL_HEAD = struct.Struct("<4sHI")
#: parameter version, precision flag
MODEL_STATE = struct.Struct("<QB")


def decode_model(data: bytes) -> ParamBundle:
    if len(data) < MODEL_HEAD.size:
        raise FormatError("Model header truncated", offset=len(data))
    magic, version, id_len = MODEL_HEAD.unpack_from(data, 0)
    if magic != MODEL_MAGIC:
        raise FormatError(f"Bad model magic {magic!r}", offset=0)
    if version != MODEL_VERSION:
        raise FormatError(f"Unsupported model version {version}", offset=4)
    pos = MODEL_HEAD.size
    if len(data) < pos + id_len + MODEL_STATE.size:
        raise FormatError("Model identifier truncated", offset=len(data))
    try:
        model_ppid = data[pos:pos + id_len].decode("utf-8")
        cfg = ModelConfig.from_ppid(model_ppid)
    except (UnicodeDecodeError, ConfigError) as exc:
        raise FormatError(f"Invalid model identifier: {exc}",
                          offset=pos) from exc
    pos += id_len
    param_version, code = MODEL_STATE.unpack_from(data, pos)
    if code not in DTYPE_CODES:
        raise FormatError(f"Unknown precision flag {code}", offset=pos + 8)
    pos += MODEL_STATE.size
    shape_map = ShapeMap(cfg)
    dtype = DTYPE_CODES[code]
    expected = pos + shape_map.size * dtype.itemsize
    if len(data) != expected:
        raise FormatError(
            f"Model payload has {len(data) - pos} bytes, expected "
            f"{expected - pos}", offset=min(len(data), expected))
    flat = np.frombuffer(data, dtype=dtype, offset=pos,
                         count=shape_map.size)
    return ParamBundle(shape_map, flat.astype(dtype.newbyteorder("=")),
                       version=param_version)


def read_model(path: pathlib.Path | str) -> ParamBundle:
    """Load trained parameters together with their layer plan"""
    return decode_model(pathlib.Path(path).read_bytes())
