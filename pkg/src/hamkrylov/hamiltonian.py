"""The J operator, sparse Hamiltonian operators, and structure diagnostics.

A Hamiltonian matrix has the block form

    H = [[E, B], [C, -E^T]],   B = B^T,  C = C^T,

equivalently J H is symmetric for J = [[0, I], [-I, 0]].  The operator
class below keeps the three blocks sparse, counts the matvecs and solves
performed through it, and never materializes the full matrix outside the
dense-oracle path.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.io
import scipy.sparse
import scipy.sparse.linalg

from .dense import SingularMatrixError


def apply_j(x):
    """Multiply by J = [[0, I], [-I, 0]] without forming it.

    Acts along axis 0, so x may be a vector of length 2n or a matrix
    with 2n rows; in the latter case every column is mapped at once.
    """
    x = np.asarray(x)
    m = x.shape[0]
    if m % 2:
        raise ValueError(f"J needs an even leading dimension, got {m}")
    n = m // 2
    return np.concatenate([x[n:], -x[:n]], axis=0)


def j_matrix(n):
    """Dense J_n = [[0, I_n], [-I_n, 0]] of size 2n x 2n."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


@dataclass(frozen=True)
class StructureReport:
    """Residuals quantifying how much structure a decomposition kept.

    hamiltonian_residual : ||J_k Htilde - (J_k Htilde)^T||_F
    j_orthogonality_residual : ||S^T J_n S - J_k||_F
    orthogonality_residual : ||S^T S - I||_F
    """

    hamiltonian_residual: float
    j_orthogonality_residual: float
    orthogonality_residual: float


def structure_report(S, Htilde):
    """Measure J-orthogonality of S and Hamiltonicity of Htilde.

    Parameters
    ----------
    S : (2n, 2k) ndarray
        Basis columns.
    Htilde : (2k, 2k) ndarray
        Projected matrix.
    """
    S = np.asarray(S)
    Htilde = np.asarray(Htilde)
    if S.shape[1] % 2:
        raise ValueError("basis must have an even number of columns")
    k = S.shape[1] // 2
    if Htilde.shape != (2 * k, 2 * k):
        raise ValueError(f"projected matrix shape {Htilde.shape} does not match basis")
    JH = apply_j(Htilde)
    StJS = S.T @ apply_j(S)
    return StructureReport(
        hamiltonian_residual=float(np.linalg.norm(JH - JH.T)),
        j_orthogonality_residual=float(np.linalg.norm(StJS - j_matrix(k))),
        orthogonality_residual=float(np.linalg.norm(S.T @ S - np.eye(2 * k))),
    )


class OperationCounters:
    """Running tally of matvecs and solves routed through an operator."""

    __slots__ = ("matvecs", "solves")

    def __init__(self):
        self.matvecs = 0
        self.solves = 0

    def snapshot(self):
        return (self.matvecs, self.solves)


class HamiltonianOperator:
    """Sparse Hamiltonian matrix H = [[E, B], [C, -E^T]] of size 2n x 2n.

    B and C are symmetrized at construction, which makes J H symmetric to
    exact bit equality: entries (i, j) and (j, i) of (M + M^T)/2 evaluate
    the same floating-point sum.

    Parameters
    ----------
    E, B, C : (n, n) array_like or sparse
        Blocks; B and C need only be symmetric up to rounding.
    name : str, optional
        Label used in diagnostics and cache file names.
    """

    def __init__(self, E, B, C, name=""):
        E = scipy.sparse.csr_array(E, dtype=float)
        B = scipy.sparse.csr_array(B, dtype=float)
        C = scipy.sparse.csr_array(C, dtype=float)
        n = E.shape[0]
        for blk, label in ((E, "E"), (B, "B"), (C, "C")):
            if blk.shape != (n, n):
                raise ValueError(f"block {label} has shape {blk.shape}, expected {(n, n)}")
        self.n = n
        self.E = E
        self.B = scipy.sparse.csr_array((B + B.T) * 0.5)
        self.C = scipy.sparse.csr_array((C + C.T) * 0.5)
        self.ET = scipy.sparse.csr_array(E.T)
        self.name = name
        self.counters = OperationCounters()
        self._lu = None
        self._lu_error = None

    @property
    def dim(self):
        return 2 * self.n

    def matvec(self, x):
        """Counted product H x for a single vector x of length 2n."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got {x.shape}")
        q, p = x[: self.n], x[self.n :]
        self.counters.matvecs += 1
        return np.concatenate([self.E @ q + self.B @ p, self.C @ q - self.ET @ p])

    def matmat(self, X):
        """Uncounted bulk product H X, used only in projection phases.

        The cost model charges matvecs for building Krylov vectors, not
        for forming small projected matrices afterwards, so this path
        deliberately bypasses the counters.
        """
        X = np.asarray(X, dtype=float)
        Q, P = X[: self.n], X[self.n :]
        return np.concatenate([self.E @ Q + self.B @ P, self.C @ Q - self.ET @ P], axis=0)

    def _factorization(self):
        # Hx = b is solved through the symmetric form (JH)x = Jb.  scipy
        # has no sparse LDL^T, so the factorization itself is plain LU of
        # the symmetric matrix JH = [[C, -E^T], [-E, -B]].
        if self._lu is None and self._lu_error is None:
            K = scipy.sparse.block_array([[self.C, -self.ET], [-self.E, -self.B]], format="csc")
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    self._lu = scipy.sparse.linalg.splu(K)
            except RuntimeError as exc:
                self._lu_error = SingularMatrixError(str(exc))
        if self._lu_error is not None:
            raise self._lu_error
        return self._lu

    @property
    def solve_capable(self):
        try:
            self._factorization()
        except SingularMatrixError:
            return False
        return True

    def solve(self, b):
        """Counted solve of H x = b through the cached factorization."""
        b = np.asarray(b, dtype=float)
        if b.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got {b.shape}")
        lu = self._factorization()
        self.counters.solves += 1
        x = lu.solve(apply_j(b))
        if not np.all(np.isfinite(x)):
            raise SingularMatrixError("factorization produced non-finite solution")
        return x

    def to_sparse(self):
        """Assemble the full 2n x 2n matrix in CSR form."""
        return scipy.sparse.block_array(
            [[self.E, self.B], [self.C, -self.ET]], format="csr"
        )

    def to_dense(self):
        """Assemble the full 2n x 2n matrix densely (oracle path only)."""
        return self.to_sparse().toarray()


def export_matrix_market(H, path):
    """Write the assembled operator as a Matrix Market coordinate file."""
    scipy.io.mmwrite(str(path), scipy.sparse.coo_matrix(H.to_sparse()))
