# flake8: noqa: F401
"""Synthetic fMRI-like data, task designs and worker partitioning"""
from .design import (
    MOTOR_EVENTS, TaskDesign, design_regressors, motor_design
)
from .hrf import hrf, hrf_kernel
from .partition import batch_count, iter_batches, partition
from .synth import (
    SyntheticConfig, SyntheticData, generate_dataset, normalize,
    normalize_batch, recover_weights
)
