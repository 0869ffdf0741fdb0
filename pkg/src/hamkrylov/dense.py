"""Small dense linear algebra helpers shared by the basis builders."""

import warnings

import numpy as np
import scipy.linalg


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a linear solve meets a (numerically) singular matrix."""


def matvec(A, x):
    """Dense matrix-vector product with shape validation.

    Parameters
    ----------
    A : (m, n) ndarray
    x : (n,) ndarray

    Returns
    -------
    (m,) ndarray
    """
    A = np.asarray(A)
    x = np.asarray(x)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={A.ndim}")
    if x.ndim != 1 or x.shape[0] != A.shape[1]:
        raise ValueError(f"shape mismatch: {A.shape} @ {x.shape}")
    return A @ x


def solve_linear(A, b):
    """Solve A x = b by LU factorization, raising on singular input.

    Raises
    ------
    SingularMatrixError
        If A is singular to working precision.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"expected a square matrix, got {A.shape}")
    with warnings.catch_warnings():
        # lu_factor warns on exact singularity before we can inspect U
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(A)
    d = np.abs(np.diag(lu))
    if d.min() <= n * np.finfo(float).eps * d.max():
        raise SingularMatrixError("matrix is singular to working precision")
    return scipy.linalg.lu_solve((lu, piv), b)


def qr_orthonormalize(M, rank_tol=1e-12):
    """Orthonormal basis for the column span of M.

    Uses column-pivoted QR; columns whose R diagonal falls below
    ``rank_tol`` times the Frobenius norm of M are treated as
    numerically dependent and dropped.

    Parameters
    ----------
    M : (n, m) ndarray
    rank_tol : float, optional
        Relative rank cutoff.

    Returns
    -------
    (n, k) ndarray
        Matrix with orthonormal columns, k = numerical rank of M.
    """
    M = np.asarray(M, dtype=float)
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return np.zeros((M.shape[0], 0))
    Q, R, _ = scipy.linalg.qr(M, mode="economic", pivoting=True)
    # pivoting orders |diag(R)| decreasingly, so the cut is a prefix
    rank = int(np.sum(np.abs(np.diag(R)) >= rank_tol * scale))
    return Q[:, :rank]
