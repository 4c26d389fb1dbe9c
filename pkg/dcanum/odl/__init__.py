# flake8: noqa: F401
"""Online dictionary learning and task-design validation"""
from .dictlearn import (
    Dictionary, ODLConfig, SparseCodes, dict_update, encode_all, odl_fit,
    surrogate_objective
)
from .lasso import lasso_objective, sparse_code
from .pcc import best_atoms, pearson_corr
from .validate import ValidationReport, run_validation
