from __future__ import annotations

import dataclasses
import logging
import math
from typing import List

import numpy as np
from scipy import sparse

from ..errors import ConfigError, ShapeError
from ..meta import ppid
from .lasso import sparse_code


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ODLConfig:
    """Online dictionary learning settings"""
    #: number of atoms K
    n_atoms: int = 20
    #: lasso weight λ_s of the sparse coding step
    sparsity: float = 0.7
    #: streaming passes over the signals
    passes: int = 2
    #: seed of the initial dictionary and of the signal order
    seed: int = 0
    #: optional cap on the fraction of nonzero coefficients per signal
    max_nonzero_fraction: float = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.n_atoms < 1:
            raise ConfigError(f"Need at least one atom: {self.n_atoms}")
        if not self.sparsity > 0:
            raise ConfigError(f"Sparsity must be positive: {self.sparsity}")
        if self.passes < 1:
            raise ConfigError(f"Need at least one pass: {self.passes}")
        frac = self.max_nonzero_fraction
        if frac is not None and not 0 < frac <= 1:
            raise ConfigError(f"Invalid nonzero fraction {frac}")

    @property
    def max_nonzero(self):
        if self.max_nonzero_fraction is None:
            return None
        return max(1, math.ceil(self.max_nonzero_fraction * self.n_atoms))

    def get_ppid(self):
        return ppid.config_to_ppid(self, "odl")


@dataclasses.dataclass
class Dictionary:
    """Column-normalized (T, K) matrix of atoms"""
    atoms: np.ndarray
    #: summed reconstruction error ‖x − Dα‖² of every streaming pass
    pass_errors: List[float] = dataclasses.field(default_factory=list)

    @property
    def atom_length(self):
        return self.atoms.shape[0]

    @property
    def atom_count(self):
        return self.atoms.shape[1]


class SparseCodes:
    def __init__(self, matrix):
        """(K, N) coefficients stored as compressed sparse columns"""
        self.matrix = sparse.csc_matrix(matrix)

    @property
    def shape(self):
        return self.matrix.shape

    def signal(self, index):
        """Dense coefficients of signal `index`"""
        return self.matrix[:, index].toarray()[:, 0]

    def row(self, atom):
        """Coefficients of `atom` over all signals (spatial map)"""
        return self.matrix[atom, :].toarray()[0]

    def nonzero_counts(self):
        return np.diff(self.matrix.indptr)

    def toarray(self):
        return self.matrix.toarray()


def dict_update(D, A, B):
    """One block coordinate descent sweep over all atoms

    Column j becomes (b_j − D a_j) / A_jj + d_j, normalized to unit
    length. Columns with A_jj < 1e-10 are left unchanged.
    """
    D = np.array(D, dtype=np.float64)
    size, count = D.shape
    if A.shape != (count, count) or B.shape != (size, count):
        raise ShapeError(
            f"Accumulators A{A.shape} and B{B.shape} do not match "
            f"dictionary {D.shape}")
    for jj in range(count):
        ajj = A[jj, jj]
        if ajj < 1e-10:
            continue
        u = (B[:, jj] - D @ A[:, jj]) / ajj + D[:, jj]
        norm = np.linalg.norm(u)
        if norm > 0:
            D[:, jj] = u / norm
    return D


def surrogate_objective(D, A, B):
    """½ tr(DᵀDA) − tr(DᵀB)"""
    return 0.5 * np.trace(D.T @ D @ A) - np.trace(D.T @ B)


def initial_dictionary(signals, n_atoms, rng):
    idx = rng.choice(signals.shape[0], size=n_atoms, replace=False)
    D = signals[idx].T.astype(np.float64)
    norms = np.linalg.norm(D, axis=0)
    norms[norms == 0] = 1
    return D / norms


def encode_all(signals, D, cfg: ODLConfig):
    """Sparse codes of every signal against a fixed dictionary"""
    gram = D.T @ D
    codes = np.zeros((D.shape[1], signals.shape[0]), dtype=np.float64)
    for ii, x in enumerate(signals):
        codes[:, ii] = sparse_code(x, D, cfg.sparsity, gram=gram,
                                   max_nonzero=cfg.max_nonzero)
    return SparseCodes(codes)


def odl_fit(signals: np.ndarray, cfg: ODLConfig):
    """Learn a dictionary from streaming passes over `signals`

    Parameters
    ----------
    signals:
        (N, T) normalized signals, N >= `cfg.n_atoms`
    cfg:
        learning settings

    Returns
    -------
    dictionary: Dictionary
    codes: SparseCodes
        (K, N) codes of all signals against the final dictionary
    """
    signals = np.asarray(signals, dtype=np.float64)
    if signals.ndim != 2:
        raise ShapeError(f"Expected (N, T) signals, got {signals.shape}")
    n_signals, length = signals.shape
    if n_signals < cfg.n_atoms:
        raise ConfigError(f"Need at least {cfg.n_atoms} signals to learn "
                          f"{cfg.n_atoms} atoms, got {n_signals}")
    rng = np.random.default_rng(cfg.seed)
    D = initial_dictionary(signals, cfg.n_atoms, rng)
    A = np.zeros((cfg.n_atoms, cfg.n_atoms), dtype=np.float64)
    B = np.zeros((length, cfg.n_atoms), dtype=np.float64)
    pass_errors = []
    for pp in range(cfg.passes):
        error = 0.
        for ii in rng.permutation(n_signals):
            x = signals[ii]
            alpha = sparse_code(x, D, cfg.sparsity,
                                max_nonzero=cfg.max_nonzero)
            resid = x - D @ alpha
            error += float(resid @ resid)
            A += np.outer(alpha, alpha)
            B += np.outer(x, alpha)
            D = dict_update(D, A, B)
        pass_errors.append(error)
        logger.debug(f"Dictionary learning pass {pp + 1}/{cfg.passes}: "
                     f"reconstruction error {error:.4g}")
    codes = encode_all(signals, D, cfg)
    return Dictionary(atoms=D, pass_errors=pass_errors), codes
