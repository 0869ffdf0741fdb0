"""Dense matrix exponential and phi-function evaluation.

These kernels are applied to the small projected matrices produced by the
basis builders and, at full size, serve as the brute-force reference for
every error measurement.
"""

import numpy as np
import scipy.linalg

from .dense import solve_linear

#: Function identifiers accepted by :func:`apply_matrix_function`.
FUNCTION_IDS = ("exp", "phi_explicit", "phi_implicit")


def expm(A):
    """Matrix exponential e^A via scaling-and-squaring Pade approximation.

    Parameters
    ----------
    A : (m, m) ndarray
        Square matrix with finite entries.

    Returns
    -------
    (m, m) ndarray

    Raises
    ------
    OverflowError
        If the exponential overflows double precision.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    E = scipy.linalg.expm(A)
    if not np.all(np.isfinite(E)):
        raise OverflowError("matrix exponential overflowed double precision")
    return E


def phi_explicit(A, b):
    """Evaluate phi(A) b = (e^A - I) A^{-1} b directly.

    Requires A nonsingular; raises ``SingularMatrixError`` otherwise, in
    which case :func:`phi_implicit` is the right tool.
    """
    b = np.asarray(b, dtype=float)
    x = solve_linear(A, b)
    return expm(A) @ x - x


def phi_implicit(A, b):
    """Evaluate phi(A) b through one exponential of an augmented matrix.

    Embeds A and b into [[A, b], [0, 0]]; the top-right column of its
    exponential is phi(A) b.  Works for singular A, where phi(0) = 1.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m = A.shape[0]
    if b.shape != (m,):
        raise ValueError(f"shape mismatch: {A.shape} with {b.shape}")
    aug = np.zeros((m + 1, m + 1))
    aug[:m, :m] = A
    aug[:m, m] = b
    return expm(aug)[:m, m]


def apply_matrix_function(function, A, b):
    """Compute f(A) b for f named by ``function``.

    Parameters
    ----------
    function : str
        One of ``"exp"``, ``"phi_explicit"``, ``"phi_implicit"``.
    A : (m, m) ndarray
    b : (m,) ndarray
    """
    if function == "exp":
        return expm(A) @ np.asarray(b, dtype=float)
    if function == "phi_explicit":
        return phi_explicit(A, b)
    if function == "phi_implicit":
        return phi_implicit(A, b)
    raise ValueError(f"unknown function {function!r}, expected one of {FUNCTION_IDS}")
