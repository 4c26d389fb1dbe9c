# flake8: noqa: F401
from .const import (
    DTYPE_CODES, dtype_to_code, dtype_to_precision, precision_to_dtype
)
from .fmts import DatasetHeader, decode_dataset, read_dataset
from .dpsg import decode_model, read_model
