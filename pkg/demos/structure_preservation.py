"""Why a structured basis: Arnoldi loses Hamiltonicity, HL keeps it.

Builds a dimension-20 basis for the sine-Gordon problem with plain
Arnoldi and with Hamiltonian Lanczos, then measures what each projected
matrix looks like and how symplectic the resulting small exponential is.
"""

import numpy as np
import scipy.linalg

from hamkrylov import build_decomposition, build_problem, random_b, structure_report
from hamkrylov.hamiltonian import j_matrix


def symplectic_defect_of_exponential(Htilde, h):
    k = Htilde.shape[0] // 2
    J = j_matrix(k)
    M = scipy.linalg.expm(h * Htilde)
    return np.linalg.norm(M.T @ J @ M - J)


def main():
    inst = build_problem("sg")
    b = random_b(inst.H.dim, seed=42)
    h = 0.01

    print(f"problem {inst.id}: {inst.H.dim} x {inst.H.dim}, basis dimension 20\n")
    print(f"{'method':8s} {'||S^T J S - J||':>16s} {'||J Ht - (J Ht)^T||':>20s} "
          f"{'sympl. defect of e^(h Ht)':>26s}")
    for method in ("A", "HL"):
        d = build_decomposition(method, inst.H, b, 10)
        rep = structure_report(d.S, d.Htilde)
        expdef = symplectic_defect_of_exponential(d.Htilde, h)
        print(f"{method:8s} {rep.j_orthogonality_residual:16.2e} "
              f"{rep.hamiltonian_residual:20.2e} {expdef:26.2e}")

    print(
        "\nThe Arnoldi basis is orthonormal but not J-orthogonal, and its"
        "\nHessenberg matrix is far from Hamiltonian, so the reduced flow"
        "\nis not symplectic.  The Lanczos recurrence assembles the"
        "\nprojected matrix from its defining blocks and the defect is"
        "\nexactly zero; the small exponential is symplectic to roundoff."
    )


if __name__ == "__main__":
    main()
