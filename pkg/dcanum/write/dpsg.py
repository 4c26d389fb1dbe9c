from __future__ import annotations

import pathlib

import numpy as np

from ..model import ParamBundle
from ..read.const import MODEL_MAGIC, MODEL_VERSION, dtype_to_code
from ..read.dpsg import MODEL_HEAD, MODEL_STATE


def encode_model(params: ParamBundle) -> bytes:
    model_ppid = params.shape_map.cfg.get_ppid().encode("utf-8")
    code = dtype_to_code(params.dtype)
    head = MODEL_HEAD.pack(MODEL_MAGIC, MODEL_VERSION, len(model_ppid))
    state = MODEL_STATE.pack(params.version, code)
    payload = np.ascontiguousarray(
        params.flat, dtype=params.dtype.newbyteorder("<")).tobytes()
    return head + model_ppid + state + payload


def write_model(path: pathlib.Path | str, params: ParamBundle):
    """Persist parameters with their model identifier to `path`"""
    path = pathlib.Path(path)
    tmp = path.with_name(path.name + "~")
    tmp.write_bytes(encode_model(params))
    tmp.replace(path)
    return path
