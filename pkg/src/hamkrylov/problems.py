"""Benchmark Hamiltonian matrices from six wave-type PDE discretizations.

Each problem is the Jacobian of a (non)linear Hamiltonian PDE semi-
discretized by central differences on a uniform grid.  The six instances
(``lw``, ``sg``, ``kg1``, ``kg2``, ``ns1``, ``ns2``) cover a linear wave
equation, a sine-Gordon equation, two cubic Klein-Gordon variants, and
two cubic Schrodinger variants.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse

from .hamiltonian import HamiltonianOperator

PROBLEM_IDS = ("lw", "sg", "kg1", "kg2", "ns1", "ns2")


def laplacian_dirichlet(n, delta_x):
    """Tridiagonal second-difference matrix with Dirichlet boundaries.

    Parameters
    ----------
    n : int
        Number of interior grid points, at least 2.
    delta_x : float
        Grid spacing.

    Returns
    -------
    (n, n) sparse matrix
        (1/delta_x^2) * tridiag(1, -2, 1).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if delta_x <= 0:
        raise ValueError("need delta_x > 0")
    w = 1.0 / delta_x**2
    main = np.full(n, -2.0 * w)
    off = np.full(n - 1, w)
    return scipy.sparse.diags_array([off, main, off], offsets=[-1, 0, 1], format="csr")


def laplacian_periodic(n, delta_x):
    """Second-difference matrix with periodic boundaries.

    Same stencil as :func:`laplacian_dirichlet` plus corner couplings
    (1, n) and (n, 1).  Singular: constant vectors lie in its kernel.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    L = scipy.sparse.lil_array(laplacian_dirichlet(n, delta_x))
    w = 1.0 / delta_x**2
    L[0, n - 1] = w
    L[n - 1, 0] = w
    return scipy.sparse.csr_array(L)


def random_b(dim, seed=42):
    """Deterministic standard-normal vector.

    Drawn from the Philox counter-based generator through an explicit
    Box-Muller transform, so the output is bit-identical for a given
    (dim, seed) across platforms and library versions.
    """
    if dim <= 0:
        raise ValueError("need dim > 0")
    gen = np.random.Generator(np.random.Philox(seed))
    m = (dim + 1) // 2
    u1 = gen.random(m)
    u2 = gen.random(m)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:dim]


@dataclass(frozen=True)
class ProblemInstance:
    """A named benchmark operator together with its grid metadata."""

    id: str
    H: HamiltonianOperator
    n: int
    delta_x: float
    description: str
    h_default: float = field(default=0.01)


def _zero(n):
    return scipy.sparse.csr_array((n, n))


def _build_lw():
    n = 400
    dx = 2.0 / (n + 1)
    H = HamiltonianOperator(_zero(n), scipy.sparse.eye_array(n), laplacian_dirichlet(n, dx), name="lw")
    return ProblemInstance("lw", H, n, dx, "linear wave equation, Dirichlet boundaries")


def _build_sg():
    n = 512
    dx = 10.0 / n
    C = laplacian_periodic(n, dx) + scipy.sparse.eye_array(n)
    H = HamiltonianOperator(_zero(n), scipy.sparse.eye_array(n), C, name="sg")
    return ProblemInstance("sg", H, n, dx, "sine-Gordon equation, periodic boundaries")


def _build_kg(which):
    # b_j follows the cosine argument 2*pi*j*delta_x/L on x_j = j*delta_x
    if which == 1:
        n, L = 400, 1.0
        dx = L / n
        j = np.arange(1, n + 1)
        b = (1.0 + np.cos(2.0 * np.pi * j * dx)) ** 2
        Bdiag = scipy.sparse.diags_array(0.25 + 3.0 * b)
    else:
        n, L = 512, 1.28
        dx = L / n
        j = np.arange(1, n + 1)
        b = (20.0 * (1.0 + np.cos(2.0 * np.pi * j * dx / 1.28))) ** 2
        Bdiag = scipy.sparse.diags_array(1.0 + 3.0 * b)
    C = laplacian_periodic(n, dx) - Bdiag
    H = HamiltonianOperator(_zero(n), scipy.sparse.eye_array(n), C, name=f"kg{which}")
    return ProblemInstance(
        f"kg{which}", H, n, dx, f"cubic Klein-Gordon equation, parameter set {which}"
    )


def _build_ns1():
    n = 500
    dx = 8.0 * np.pi / n
    x = -4.0 * np.pi + np.arange(n) * dx
    # phase with tan(theta) = sqrt(2) tan(x), continuous positive branch
    theta = np.arctan2(np.sqrt(2.0) * np.sin(x), np.cos(x))
    psi = np.sqrt(np.sin(x) ** 2 + 1.0) * np.exp(1j * theta)
    q0, p0 = psi.real, psi.imag
    D1 = 3.0 * q0**2 + p0**2
    D2 = 2.0 * q0 * p0
    D3 = 3.0 * p0**2 + q0**2
    lap = laplacian_periodic(n, dx)
    Bdiag = scipy.sparse.diags_array(np.sin(x) ** 2)
    E = scipy.sparse.diags_array(D2)
    B = -0.5 * lap - Bdiag + scipy.sparse.diags_array(D3)
    C = 0.5 * lap + Bdiag - scipy.sparse.diags_array(D1)
    H = HamiltonianOperator(E, B, C, name="ns1")
    return ProblemInstance(
        "ns1", H, n, dx, "cubic Schrodinger equation with standing light wave potential"
    )


def _build_ns2():
    n = 512
    dx = 20.0 / n
    x = -10.0 + np.arange(n) * dx
    psi = 2.0 * np.exp(-1j * (2.0 * x + 1.0 + np.pi / 2.0)) / np.cosh(2.0 * x)
    q0, p0 = psi.real, psi.imag
    D1 = 6.0 * q0**2 + 2.0 * p0**2
    D2 = 8.0 * q0 * p0
    D3 = 6.0 * p0**2 + 2.0 * q0**2
    lap = laplacian_periodic(n, dx)
    E = scipy.sparse.diags_array(D2)
    B = -lap + scipy.sparse.diags_array(D3)
    C = lap - scipy.sparse.diags_array(D1)
    H = HamiltonianOperator(E, B, C, name="ns2")
    return ProblemInstance("ns2", H, n, dx, "cubic Schrodinger equation, soliton profile")


_BUILDERS = {
    "lw": _build_lw,
    "sg": _build_sg,
    "kg1": lambda: _build_kg(1),
    "kg2": lambda: _build_kg(2),
    "ns1": _build_ns1,
    "ns2": _build_ns2,
}


def build_problem(problem_id):
    """Construct one of the six benchmark problems by id."""
    try:
        builder = _BUILDERS[problem_id]
    except KeyError:
        raise ValueError(
            f"unknown problem {problem_id!r}, expected one of {PROBLEM_IDS}"
        ) from None
    return builder()
