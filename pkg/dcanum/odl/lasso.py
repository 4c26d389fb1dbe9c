from numba import njit, bool_, float64, int64
import numpy as np

from ..errors import DomainError, ShapeError


@njit(float64[:](float64[:, :], float64[:], float64, float64, int64,
                 bool_[:]),
      cache=True)
def _coordinate_descent(gram, dtx, lam, tol, max_sweeps, active):
    """Cyclic coordinate descent for ½‖x − Dα‖² + λ‖α‖₁

    Only works on the Gram matrix DᵀD and the correlations Dᵀx.
    Coefficients with `active[j] == False` stay at zero.
    """
    size = dtx.shape[0]
    alpha = np.zeros(size, dtype=np.float64)
    # gram @ alpha
    ga = np.zeros(size, dtype=np.float64)
    for _ in range(max_sweeps):
        max_change = 0.
        for jj in range(size):
            gjj = gram[jj, jj]
            if not active[jj] or gjj <= 0:
                continue
            rho = dtx[jj] - ga[jj] + gjj * alpha[jj]
            if rho > lam:
                new = (rho - lam) / gjj
            elif rho < -lam:
                new = (rho + lam) / gjj
            else:
                new = 0.
            diff = new - alpha[jj]
            if diff != 0:
                for kk in range(size):
                    ga[kk] += gram[kk, jj] * diff
                alpha[jj] = new
                if abs(diff) > max_change:
                    max_change = abs(diff)
        if max_change < tol:
            break
    return alpha


def sparse_code(x, D, lam, tol=1e-6, max_sweeps=1000, max_nonzero=None,
                gram=None):
    """Lasso coefficients of `x` in the dictionary `D`

    Parameters
    ----------
    x: np.ndarray
        signal of length T
    D: np.ndarray
        (T, K) dictionary with normalized columns
    lam: float
        sparsity weight of the L1 term
    tol: float
        convergence threshold on the largest coefficient change
    max_sweeps: int
        maximum number of passes over all coefficients
    max_nonzero: int
        if set, only the `max_nonzero` largest coefficients are kept
        and refitted on that support
    gram: np.ndarray
        optional precomputed DᵀD

    Returns
    -------
    alpha: np.ndarray
        K coefficients
    """
    x = np.asarray(x, dtype=np.float64)
    D = np.asarray(D, dtype=np.float64)
    if x.ndim != 1 or D.ndim != 2 or D.shape[0] != x.size:
        raise ShapeError(f"Signal of shape {x.shape} does not match "
                         f"dictionary of shape {D.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("Cannot sparse-code a non-finite signal")
    if lam < 0:
        raise DomainError(f"Sparsity weight must not be negative: {lam}")
    if gram is None:
        gram = D.T @ D
    dtx = D.T @ x
    active = np.ones(D.shape[1], dtype=np.bool_)
    alpha = _coordinate_descent(gram, dtx, float(lam), float(tol),
                                int(max_sweeps), active)
    if max_nonzero is not None and np.count_nonzero(alpha) > max_nonzero:
        keep = np.argsort(-np.abs(alpha), kind="stable")[:max_nonzero]
        active[:] = False
        active[keep] = True
        alpha = _coordinate_descent(gram, dtx, float(lam), float(tol),
                                    int(max_sweeps), active)
    return alpha


def lasso_objective(x, D, alpha, lam):
    resid = x - D @ alpha
    return 0.5 * float(resid @ resid) + lam * float(np.sum(np.abs(alpha)))
