import numpy as np

from ..errors import DomainError, ShapeError


def pearson_corr(a, b):
    """Pearson correlation coefficient of two equal-length vectors"""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(f"Cannot correlate shapes {a.shape} and {b.shape}")
    ac = a - np.mean(a)
    bc = b - np.mean(b)
    na = np.linalg.norm(ac)
    nb = np.linalg.norm(bc)
    if na <= 1e-12 * max(1., np.max(np.abs(a))) \
            or nb <= 1e-12 * max(1., np.max(np.abs(b))):
        raise DomainError("Correlation is undefined for constant input")
    return float(np.clip(ac @ bc / (na * nb), -1, 1))


def best_atoms(atoms, designs):
    """Match every design to the atom with the largest |PCC|

    Parameters
    ----------
    atoms: np.ndarray
        (T, K) atoms
    designs: np.ndarray
        (E, T) design regressors

    Returns
    -------
    indices: np.ndarray
        best atom per design
    pccs: np.ndarray
        |PCC| of the best atom per design (atom sign is arbitrary)
    """
    atoms = np.atleast_2d(atoms)
    designs = np.atleast_2d(designs)
    if atoms.shape[0] != designs.shape[1]:
        raise ShapeError(f"Atoms of length {atoms.shape[0]} do not match "
                         f"designs of length {designs.shape[1]}")
    indices = np.zeros(designs.shape[0], dtype=np.int64)
    pccs = np.zeros(designs.shape[0], dtype=np.float64)
    for ee, design in enumerate(designs):
        best = -1.
        for kk in range(atoms.shape[1]):
            try:
                value = abs(pearson_corr(atoms[:, kk], design))
            except DomainError:
                continue
            if value > best:
                best = value
                indices[ee] = kk
        pccs[ee] = max(best, 0.)
    return indices, pccs
