"""Structure-preserving Krylov approximation of exp(hH)b and phi(hH)b.

The package is organized bottom-up: small dense helpers (``dense``,
``matfun``), the sparse Hamiltonian operator (``hamiltonian``), six
basis builders (``krylov``), matrix-function actions with error control
(``approx``), benchmark problem generators (``problems``) and a CSV
experiment harness with CLI (``harness``, ``cli``).
"""

from .approx import (
    AdaptiveResult,
    adaptive_run,
    approximate_action,
    error_estimate_arnoldi,
    error_estimate_hl,
)
from .dense import SingularMatrixError
from .hamiltonian import (
    HamiltonianOperator,
    StructureReport,
    apply_j,
    export_matrix_market,
    j_matrix,
    structure_report,
)
from .krylov import (
    METHOD_IDS,
    ArnoldiProcess,
    BreakdownError,
    HamiltonianLanczosProcess,
    KrylovDecomposition,
    OperationCost,
    arnoldi,
    block_j_orthogonal,
    build_decomposition,
    hamiltonian_lanczos,
    heks,
    isotropic_arnoldi,
    re_j_orthogonalize,
    symplectic_arnoldi,
)
from .matfun import FUNCTION_IDS, expm, phi_explicit, phi_implicit
from .problems import (
    PROBLEM_IDS,
    ProblemInstance,
    build_problem,
    laplacian_dirichlet,
    laplacian_periodic,
    random_b,
)

__all__ = [
    "AdaptiveResult",
    "ArnoldiProcess",
    "BreakdownError",
    "FUNCTION_IDS",
    "HamiltonianLanczosProcess",
    "HamiltonianOperator",
    "KrylovDecomposition",
    "METHOD_IDS",
    "OperationCost",
    "PROBLEM_IDS",
    "ProblemInstance",
    "SingularMatrixError",
    "StructureReport",
    "adaptive_run",
    "apply_j",
    "approximate_action",
    "arnoldi",
    "block_j_orthogonal",
    "build_decomposition",
    "build_problem",
    "error_estimate_arnoldi",
    "error_estimate_hl",
    "expm",
    "export_matrix_market",
    "hamiltonian_lanczos",
    "heks",
    "isotropic_arnoldi",
    "j_matrix",
    "laplacian_dirichlet",
    "laplacian_periodic",
    "phi_explicit",
    "phi_implicit",
    "random_b",
    "re_j_orthogonalize",
    "structure_report",
    "symplectic_arnoldi",
]

__version__ = "0.1.0"
