"""Matrix-function actions, error estimates and adaptive dimension control.

A decomposition reduces f(hH)b to a small dense evaluation

    f(hH) b  ~=  S f(h Htilde) W^T b,

where W^T b is precomputed as ``start_coord``.  For the two methods with
a scalar remainder term (Arnoldi and the Hamiltonian Lanczos recurrence)
the first summand of the error expansion gives a cheap a-posteriori
estimate, which drives :func:`adaptive_run`.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .krylov import ArnoldiProcess, HamiltonianLanczosProcess
from .matfun import apply_matrix_function, phi_implicit


def approximate_action(decomp, function, h):
    """Evaluate S f(h Htilde) W^T b.

    Parameters
    ----------
    decomp : KrylovDecomposition
    function : str
        One of ``exp``, ``phi_explicit``, ``phi_implicit``.
    h : float
        Scalar factor applied to the projected matrix.

    Returns
    -------
    (2n,) ndarray

    Raises
    ------
    SingularMatrixError
        For ``phi_explicit`` when h*Htilde is singular; use
        ``phi_implicit`` in that case.
    """
    y = apply_matrix_function(function, h * decomp.Htilde, decomp.start_coord)
    return decomp.S @ y


def _remainder_estimate(decomp, h, b_norm):
    # first summand of the error expansion: the remainder scalar couples
    # the subspace to its complement through the trailing coordinate of
    # phi(h Htilde) e_1
    m = decomp.Htilde.shape[0]
    e1 = np.zeros(m)
    e1[0] = 1.0
    w = phi_implicit(h * decomp.Htilde, e1)
    return float(b_norm * abs(h * decomp.remainder_scalar * w[decomp.remainder_index - 1]))


def error_estimate_arnoldi(decomp, h, b_norm):
    """A-posteriori estimate of ||exp(hH)b - approximation|| for Arnoldi.

    Computes ||b|| * |h * h_{k+1,k} * e_k^T phi(h Htilde) e_1| with phi
    evaluated in augmented (implicit) form, so a singular projected
    matrix is harmless.  Zero at breakdown, consistent with exactness on
    an invariant subspace.
    """
    if decomp.method != "A":
        raise ValueError("estimator applies to Arnoldi decompositions")
    return _remainder_estimate(decomp, h, b_norm)


def error_estimate_hl(decomp, h, b_norm):
    """A-posteriori error estimate for the Hamiltonian Lanczos basis.

    Same first-summand form as the Arnoldi estimator with the coupling
    scalar beta_k and the trailing coordinate e_{2k}.
    """
    if decomp.method != "HL":
        raise ValueError("estimator applies to Hamiltonian Lanczos decompositions")
    return _remainder_estimate(decomp, h, b_norm)


@dataclass
class AdaptiveResult:
    """Outcome of an adaptive basis-growth run.

    ``estimate_history`` holds (k, estimate) pairs for every step taken,
    k counting Arnoldi steps or Lanczos pairs.  ``actual_error`` is
    filled by callers that hold an oracle; the run itself never computes
    one.
    """

    approximation: np.ndarray
    steps_used: int
    estimate_history: List[Tuple[int, float]]
    converged: bool
    actual_error: Optional[float] = None


def adaptive_run(H, b, function, h, tol, k_max, method):
    """Grow a basis until the error estimate falls below ``tol``.

    The basis is extended one Arnoldi column or one Lanczos pair at a
    time, with the estimator evaluated after every extension.  Breakdown
    is convergence: the projection is exact on an invariant subspace, so
    the run reports converged with estimate zero.

    Parameters
    ----------
    H : HamiltonianOperator
    b : (2n,) ndarray
    function : str
        Function whose action is returned.  The estimator itself targets
        the exponential, the paper's adaptive setting.
    h, tol : float
    k_max : int
        Step cap; reaching it without meeting ``tol`` flags the result
        as not converged.
    method : str
        ``"A"`` or ``"HL"``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method == "A":
        proc = ArnoldiProcess(H, b)
        estimate = error_estimate_arnoldi
    elif method == "HL":
        proc = HamiltonianLanczosProcess(H, b)
        estimate = error_estimate_hl
    else:
        raise ValueError("adaptive growth supports methods 'A' and 'HL'")
    history = []
    converged = False
    decomp = None
    for k in range(1, k_max + 1):
        advanced = proc.step()
        decomp = proc.to_decomposition()
        if not advanced:
            history.append((k, 0.0))
            converged = True
            break
        eps = estimate(decomp, h, proc.b_norm)
        history.append((k, eps))
        if eps <= tol:
            converged = True
            break
    return AdaptiveResult(
        approximation=approximate_action(decomp, function, h),
        steps_used=history[-1][0],
        estimate_history=history,
        converged=converged,
    )
