import numpy as np

#: magic bytes of the signal dataset file
DATASET_MAGIC = b"FMTS"
#: dataset file format version
DATASET_VERSION = 1

#: magic bytes of the model file
MODEL_MAGIC = b"DCAM"
#: model file format version
MODEL_VERSION = 1

#: payload precision flags shared by files and wire messages
DTYPE_CODES = {
    0: np.dtype("<f4"),
    1: np.dtype("<f8"),
}

#: precision names used in configuration files
PRECISIONS = {
    "f32": np.float32,
    "f64": np.float64,
}


def dtype_to_code(dtype):
    dtype = np.dtype(dtype)
    for code, dt in DTYPE_CODES.items():
        if dt.kind == dtype.kind and dt.itemsize == dtype.itemsize:
            return code
    raise ValueError(f"Unsupported payload dtype {dtype}")


def precision_to_dtype(precision):
    try:
        return PRECISIONS[precision]
    except KeyError:
        raise ValueError(f"Unknown precision '{precision}', expected one of "
                         f"{sorted(PRECISIONS)}") from None


def dtype_to_precision(dtype):
    return "f32" if np.dtype(dtype).itemsize == 4 else "f64"
