import pathlib

import numpy as np

from .params import ParamBundle


def export_first_layer_filters(params: ParamBundle) -> np.ndarray:
    """Return the filters of the first encoder layer, one row per filter"""
    weights = params.conv("enc0").weights
    # the first layer sees a single input channel
    return np.array(weights[:, 0, :], copy=True)


def write_filters_csv(path: pathlib.Path, filters: np.ndarray):
    """Write filters as CSV with header `filter_id,w0,...`

    Values are written with 17 significant digits, so that float32 and
    float64 filters round-trip bit-exactly.
    """
    path = pathlib.Path(path)
    num, kern = filters.shape
    header = ",".join(["filter_id"] + [f"w{ii}" for ii in range(kern)])
    table = np.column_stack([np.arange(num, dtype=np.float64),
                             np.asarray(filters, dtype=np.float64)])
    fmt = ["%d"] + ["%.17g"] * kern
    np.savetxt(path, table, fmt=fmt, delimiter=",", header=header,
               comments="")


def read_filters_csv(path: pathlib.Path, dtype=np.float64) -> np.ndarray:
    """Read filters written by :func:`write_filters_csv`"""
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2,
                       dtype=np.float64)
    order = np.argsort(table[:, 0], kind="stable")
    return np.asarray(table[order, 1:], dtype=dtype)
