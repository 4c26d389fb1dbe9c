# flake8: noqa: F401
from . import csv_report
from .fmts import encode_dataset, write_dataset
from .dpsg import encode_model, write_model
