"""Shared test utilities.

Independent reference implementations live here so that test expectations
are computed by code that shares nothing with the package internals.
"""

import numpy as np


def expm_ld(A):
    """Extended-precision matrix exponential via Taylor scaling-and-squaring.

    Works in longdouble throughout.  Used where the defect being measured
    sits below what a double-precision exponential can resolve; scipy's
    expm carries a forward error around 1e-6 on the stiffer projected
    matrices, which would mask the quantity under test.
    """
    A = np.asarray(A, dtype=np.longdouble)
    n = A.shape[0]
    nrm = float(np.abs(A).sum(axis=1).max())
    s = max(0, int(np.ceil(np.log2(nrm / 0.25)))) if nrm > 0.25 else 0
    B = A / np.longdouble(2.0) ** s
    E = np.eye(n, dtype=np.longdouble)
    T = np.eye(n, dtype=np.longdouble)
    for k in range(1, 60):
        T = (T @ B) / np.longdouble(k)
        E = E + T
        if float(np.abs(T).max()) < 1e-24 * float(np.abs(E).max()):
            break
    for _ in range(s):
        E = E @ E
    return E


def taylor_expm(A, terms=30):
    """Plain double-precision Taylor series, for small well-scaled matrices."""
    A = np.asarray(A, dtype=float)
    E = np.eye(A.shape[0])
    T = np.eye(A.shape[0])
    for k in range(1, terms):
        T = T @ A / k
        E = E + T
    return E


def series_phi(A, b, terms=40):
    """phi(A) b = sum_{k>=0} A^k b / (k+1)! by direct summation."""
    A = np.asarray(A, dtype=float)
    term = np.asarray(b, dtype=float).copy()
    out = np.zeros_like(term)
    fact = 1.0
    for k in range(terms):
        fact *= k + 1
        out = out + term / fact
        term = A @ term
    return out


def series_phi_ld(A, b, terms=250):
    """Longdouble phi series for matrices too large in norm for 40 terms.

    Intermediate terms grow to ||A||^k / k! before the factorial wins,
    so the summation is carried in extended precision to keep the
    cancellation error below double roundoff.
    """
    A = np.asarray(A, dtype=np.longdouble)
    term = np.asarray(b, dtype=np.longdouble).copy()
    out = np.zeros_like(term)
    fact = np.longdouble(1.0)
    for k in range(terms):
        fact = fact * (k + 1)
        out = out + term / fact
        term = A @ term
    return out.astype(float)


def phi_action_ld(A, b):
    """phi(A) b through the augmented exponential, in extended precision.

    Handles matrices far too large in norm for direct series summation;
    accuracy is set by :func:`expm_ld`.
    """
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    aug = np.zeros((m + 1, m + 1))
    aug[:m, :m] = A
    aug[:m, m] = np.asarray(b, dtype=float)
    return expm_ld(aug)[:m, m].astype(float)


def j_dense(n):
    """Dense 2n x 2n symplectic form [[0, I], [-I, 0]]."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def symplectic_defect(S):
    """|| S^T J S - J_k ||_F for S with an even number of columns."""
    n = S.shape[0] // 2
    k = S.shape[1] // 2
    return np.linalg.norm(S.T @ j_dense(n) @ S - j_dense(k))


def hamiltonian_defect(Htilde):
    """|| J Htilde - (J Htilde)^T ||_F; zero iff Htilde is Hamiltonian."""
    k = Htilde.shape[0] // 2
    M = j_dense(k) @ Htilde
    return np.linalg.norm(M - M.T)
