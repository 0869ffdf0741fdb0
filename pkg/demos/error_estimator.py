"""The a-posteriori estimate next to the true error, step by step.

Runs the Hamiltonian Lanczos recurrence on the first Klein-Gordon
problem and prints the error estimate against the oracle error after
every pair, then lets the adaptive driver pick the dimension on its own.
"""

import numpy as np

from hamkrylov import adaptive_run, build_problem, random_b
from hamkrylov.approx import approximate_action, error_estimate_hl
from hamkrylov.krylov import HamiltonianLanczosProcess
from hamkrylov.matfun import expm


def main():
    inst = build_problem("kg1")
    b = random_b(inst.H.dim, seed=42)
    h = 0.01
    reference = expm(h * inst.H.to_dense()) @ b
    refnorm = np.linalg.norm(reference)

    print(f"problem {inst.id}, HL pairs, h = {h}\n")
    print(f"{'k':>3s} {'dim':>5s} {'actual rel err':>15s} {'estimate':>12s} {'ratio':>8s}")
    proc = HamiltonianLanczosProcess(inst.H, b)
    for k in range(1, 13):
        if not proc.step():
            break
        d = proc.to_decomposition()
        approx = approximate_action(d, "exp", h)
        actual = np.linalg.norm(approx - reference) / refnorm
        est = error_estimate_hl(d, h, proc.b_norm)
        ratio = est / (actual * refnorm)
        print(f"{k:3d} {d.dim:5d} {actual:15.2e} {est:12.2e} {ratio:8.1e}")

    res = adaptive_run(inst.H, b, "exp", h, tol=1e-10, k_max=60, method="HL")
    err = np.linalg.norm(res.approximation - reference) / refnorm
    print(
        f"\nadaptive_run(tol=1e-10): stopped after {res.steps_used} pairs,"
        f" oracle error {err:.2e}"
    )
    print(
        "\nThe estimate is the first summand of the error expansion, so"
        "\nit runs below the truth, here by one to three orders.  What it"
        "\ngets right is the decay rate: once convergence sets in, both"
        "\ncolumns fall geometrically in lockstep, so thresholding the"
        "\nestimate stops within a couple of pairs of where an oracle"
        "\nwould have stopped."
    )


if __name__ == "__main__":
    main()
