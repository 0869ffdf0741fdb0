"""Error vs basis dimension for all six methods on one problem.

Compares every method against the dense exp(hH)b oracle on the soliton
Schrodinger problem at a few basis sizes.  The structured methods track
Arnoldi closely; the extended-Krylov basis trades matvecs for solves.
"""

import numpy as np

from hamkrylov import (
    approximate_action,
    build_decomposition,
    build_problem,
    random_b,
)
from hamkrylov.krylov import METHOD_IDS
from hamkrylov.matfun import expm


def main():
    inst = build_problem("ns2")
    b = random_b(inst.H.dim, seed=42)
    h = 0.01
    reference = expm(h * inst.H.to_dense()) @ b
    refnorm = np.linalg.norm(reference)

    rs = (5, 10, 15, 20, 25)
    print(f"problem {inst.id}: relative error of exp(hH)b, h = {h}\n")
    header = "method " + "".join(f"{'r=' + str(r):>12s}" for r in rs)
    print(header)
    final_dims = {}
    for method in METHOD_IDS:
        cells = []
        for r in rs:
            d = build_decomposition(method, inst.H, b, r)
            err = np.linalg.norm(approximate_action(d, "exp", h) - reference) / refnorm
            cells.append(f"{err:12.1e}")
            final_dims[method] = d.dim
        print(f"{method:7s}" + "".join(cells))

    dims = ", ".join(f"{m} {final_dims[m]}" for m in METHOD_IDS)
    print(f"\nbasis dimension at r=25: {dims}")
    print(
        "\nA and HL ride the same Krylov space and converge together."
        "\nSA and IA build the same dimension from half the matvecs but"
        "\nstall earlier on this problem.  BJ lands in front only"
        "\nbecause its block split inflates the basis four-fold here;"
        "\nper dimension it matches Arnoldi.  HEKS spends sparse solves"
        "\non H^{-1} directions, which pays off only when the"
        "\nsmall-magnitude end of the spectrum carries the action, and"
        "\nhere it does not."
    )


if __name__ == "__main__":
    main()
