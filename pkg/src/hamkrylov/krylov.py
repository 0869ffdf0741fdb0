"""Krylov basis construction for Hamiltonian matrices.

Six builders produce a :class:`KrylovDecomposition` holding a basis S, a
projected matrix, and enough bookkeeping to evaluate f(hH)b and error
estimates on the small matrix:

==========  =========================================================
tag         construction
==========  =========================================================
``A``       plain Arnoldi with full reorthogonalization
``HL``      Hamiltonian Lanczos short recurrence, J-orthogonal pairs
``SA``      symplectic Arnoldi, doubly orthogonalized [V, -JV] basis
``IA``      isotropic Arnoldi, J-orthogonalized [U, -JU] basis
``HEKS``    Hamiltonian extended Krylov (powers of H and H^{-1})
``BJ``      block J-orthogonal splitting of an Arnoldi basis
==========  =========================================================

All structure-preserving builders return S with S^T J S = J_k and an
exactly Hamiltonian projected matrix; breakdown of a recurrence is
reported through a flag, since it signals an invariant subspace on
which the projected result is exact.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dense import qr_orthonormalize
from .hamiltonian import apply_j

METHOD_IDS = ("A", "HL", "SA", "IA", "HEKS", "BJ")

#: Breakdown threshold shared by all recurrences.
DEFAULT_BREAKDOWN_TOL = 1e-14


class BreakdownError(RuntimeError):
    """A recurrence broke down before one complete basis unit existed."""


@dataclass(frozen=True)
class OperationCost:
    """Operator-level work spent generating a basis.

    Only the basis recurrence is charged: projection products needed to
    form the small matrix afterwards are bulk operations outside the
    per-vector cost model.  ``inner_products`` counts the recurrence
    coefficients of the first orthogonalization pass; norms and cleanup
    sweeps are excluded.
    """

    matvecs: int
    solves: int
    inner_products: int


@dataclass
class KrylovDecomposition:
    """Output of a basis builder.

    Attributes
    ----------
    method : str
        One of :data:`METHOD_IDS`.
    S : (2n, m) ndarray
        Basis columns.
    Htilde : (m, m) ndarray
        Projected matrix.
    left_inverse : str
        ``"transpose"`` if W^T = S^T, ``"j_symplectic"`` if
        W^T = J_k^T S^T J_n.
    start_coord : (m,) ndarray
        W^T b, the starting coordinate vector of the reduced problem.
    remainder_scalar : float or None
        Coupling scalar of the Krylov relation
        H S = S Htilde + remainder_scalar * u_next * e_rem^T
        (Arnoldi subdiagonal or Lanczos beta); None for methods without
        a single-term remainder.
    remainder_index : int or None
        1-based position of the coupling coordinate e_rem.
    remainder_vector : (2n,) ndarray or None
        The next basis vector u_next, when available.
    breakdown : bool
        True if the recurrence stopped early (invariant subspace).
    breakdown_step : int or None
        Step at which the recurrence stopped.
    cost : OperationCost
    """

    method: str
    S: np.ndarray
    Htilde: np.ndarray
    left_inverse: str
    start_coord: np.ndarray
    remainder_scalar: Optional[float]
    remainder_index: Optional[int]
    remainder_vector: Optional[np.ndarray]
    breakdown: bool
    breakdown_step: Optional[int]
    cost: OperationCost

    @property
    def dim(self):
        return self.S.shape[1]


def _project_out_pairs(M, N, x):
    # x - S J_k^T S^T J x  for S = [M N]; annihilates components along
    # the J-orthogonal pairs (m_i, n_i)
    jx = apply_j(x)
    a = M.T @ jx
    c = N.T @ jx
    return x + M @ c - N @ a


def re_j_orthogonalize(S, sweeps=1):
    """Restore S^T J S = J_r on a basis with column pairing [M, N].

    Each pair (m_j, n_j) is projected against the leading j-1 pairs and
    then rescaled so that m_j^T J n_j = 1.  Cross-pair contamination of
    size eps drops to roughly eps^2 per sweep; a second sweep is useful
    for heavily perturbed bases.

    Parameters
    ----------
    S : (2n, 2r) ndarray
    sweeps : int, optional

    Returns
    -------
    (2n, 2r) ndarray
        A cleaned copy; the input is not modified.
    """
    S = np.array(S, dtype=float)
    if S.shape[1] % 2:
        raise ValueError("basis must have an even number of columns")
    r = S.shape[1] // 2
    M = S[:, :r]
    N = S[:, r:]
    for _ in range(sweeps):
        for j in range(r):
            if j:
                M[:, j] = _project_out_pairs(M[:, :j], N[:, :j], M[:, j])
                N[:, j] = _project_out_pairs(M[:, :j], N[:, :j], N[:, j])
            d = float(M[:, j] @ apply_j(N[:, j]))
            if d != 0.0:
                N[:, j] /= d
    return S


def _j_symplectic_start(S, b):
    # W^T b for W^T = J_k^T S^T J_n
    return -apply_j(S.T @ apply_j(b))


def _check_b(b):
    b = np.asarray(b, dtype=float)
    nb = float(np.linalg.norm(b))
    if nb == 0.0:
        raise ValueError("starting vector must be nonzero")
    return b, nb


class ArnoldiProcess:
    """Incremental Arnoldi iteration with optional reorthogonalization.

    Supports one-column-at-a-time growth so an adaptive caller can test
    an error estimate after every step.  ``step`` returns False once the
    subdiagonal falls below ``tol`` (invariant subspace found); the
    decomposition built so far remains valid and exact.
    """

    def __init__(self, H, b, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
        b, nb = _check_b(b)
        self.H = H
        self.tol = tol
        self.rejorth = rejorth
        self.b_norm = nb
        self.vectors = [b / nb]
        self.hcols = []
        self.inner_products = 0
        self.breakdown = False
        self.breakdown_step = None
        self._counters0 = H.counters.snapshot()

    @property
    def steps(self):
        return len(self.hcols)

    def step(self):
        """Extend the basis by one column; False on breakdown."""
        if self.breakdown:
            return False
        j = len(self.hcols) + 1
        z = self.H.matvec(self.vectors[j - 1])
        coeffs = np.zeros(j + 1)
        for i in range(j):
            hij = self.vectors[i] @ z
            z -= hij * self.vectors[i]
            coeffs[i] = hij
        self.inner_products += j + 1
        if self.rejorth:
            # second pass recovers orthogonality lost to cancellation
            for i in range(j):
                c = self.vectors[i] @ z
                z -= c * self.vectors[i]
                coeffs[i] += c
        hnext = float(np.linalg.norm(z))
        coeffs[j] = hnext
        self.hcols.append(coeffs)
        if hnext < self.tol:
            self.breakdown = True
            self.breakdown_step = j
            return False
        self.vectors.append(z / hnext)
        return True

    def to_decomposition(self):
        k = len(self.hcols)
        if k == 0:
            raise ValueError("no Arnoldi steps taken")
        S = np.column_stack(self.vectors[:k])
        Htilde = np.zeros((k, k))
        for j, col in enumerate(self.hcols):
            rows = min(j + 2, k)
            Htilde[:rows, j] = col[:rows]
        start = np.zeros(k)
        start[0] = self.b_norm
        mv, sv = self.H.counters.snapshot()
        mv0, sv0 = self._counters0
        return KrylovDecomposition(
            method="A",
            S=S,
            Htilde=Htilde,
            left_inverse="transpose",
            start_coord=start,
            remainder_scalar=float(self.hcols[-1][k]),
            remainder_index=k,
            remainder_vector=self.vectors[k] if len(self.vectors) > k else None,
            breakdown=self.breakdown,
            breakdown_step=self.breakdown_step,
            cost=OperationCost(mv - mv0, sv - sv0, self.inner_products),
        )


def arnoldi(H, b, steps, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """Orthonormal Krylov basis of dimension ``steps`` via Arnoldi.

    Parameters
    ----------
    H : HamiltonianOperator
    b : (2n,) ndarray
        Nonzero starting vector.
    steps : int
        Requested basis dimension; fewer columns are returned on
        breakdown.
    tol : float, optional
        Breakdown threshold on the subdiagonal.
    rejorth : bool, optional
        Second Gram-Schmidt pass per column (on by default).
    """
    if steps < 1:
        raise ValueError("need at least one step")
    proc = ArnoldiProcess(H, b, tol=tol, rejorth=rejorth)
    for _ in range(steps):
        if not proc.step():
            break
    return proc.to_decomposition()


class HamiltonianLanczosProcess:
    """Incremental Hamiltonian Lanczos recurrence.

    Each step appends one J-orthogonal pair (u_j, v_j) and the
    coefficients gamma_j, delta_j, alpha_j, beta_j of the relation

        H [U_k V_k] = [U_k V_k] [[G, T], [D, -G]] + beta_k u_{k+1} e_{2k}^T

    with G = diag(gamma), D = diag(delta) and T symmetric tridiagonal
    (alpha diagonal, beta off-diagonal).  The pairing is normalized to
    u_j^T J v_j = +1, which fixes delta_j = u_j^T J H u_j and
    alpha_j = -v_j^T J H v_j.  Exactly three inner products per pair
    are charged, matching the advertised 3r count for r pairs.
    """

    def __init__(self, H, b, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
        b, nb = _check_b(b)
        self.H = H
        self.tol = tol
        self.rejorth = rejorth
        self.b_norm = nb
        self.us = [b / nb]
        self.vs = []
        self.gammas = []
        self.deltas = []
        self.alphas = []
        self.betas = []
        self.inner_products = 0
        self.breakdown = False
        self.breakdown_step = None
        self._counters0 = H.counters.snapshot()

    @property
    def pairs(self):
        return len(self.vs)

    def step(self):
        """Append one (u, v) pair; False on breakdown."""
        if self.breakdown:
            return False
        j = len(self.vs) + 1
        u = self.us[j - 1]
        z = self.H.matvec(u)
        gamma = float(u @ z)
        delta = float(u @ apply_j(z))
        self.inner_products += 2
        if abs(delta) < self.tol:
            # the pair cannot be completed; the j-1 finished pairs stand
            self.breakdown = True
            self.breakdown_step = j
            if j == 1:
                raise BreakdownError("breakdown before the first pair completed")
            return False
        v = (z - gamma * u) / delta
        if self.rejorth and j > 1:
            v = _project_out_pairs(
                np.column_stack(self.us[: j - 1]), np.column_stack(self.vs), v
            )
        zv = self.H.matvec(v)
        alpha = -float(v @ apply_j(zv))
        self.inner_products += 1
        unew = zv - alpha * u + gamma * v
        if j >= 2:
            unew -= self.betas[j - 2] * self.us[j - 2]
        beta = float(np.linalg.norm(unew))
        self.gammas.append(gamma)
        self.deltas.append(delta)
        self.alphas.append(alpha)
        self.betas.append(beta)
        self.vs.append(v)
        if beta < self.tol:
            # invariant subspace: the j pairs give the exact projection
            self.breakdown = True
            self.breakdown_step = j
            return False
        unext = unew / beta
        if self.rejorth:
            unext = _project_out_pairs(
                np.column_stack(self.us[:j]), np.column_stack(self.vs), unext
            )
            unext /= np.linalg.norm(unext)
        self.us.append(unext)
        return True

    def to_decomposition(self):
        k = len(self.vs)
        if k == 0:
            raise BreakdownError("no completed Lanczos pairs")
        S = np.hstack([np.column_stack(self.us[:k]), np.column_stack(self.vs)])
        G = np.diag(self.gammas)
        T = np.diag(self.alphas)
        for i in range(k - 1):
            T[i, i + 1] = T[i + 1, i] = self.betas[i]
        Htilde = np.block([[G, T], [np.diag(self.deltas), -G]])
        start = np.zeros(2 * k)
        start[0] = self.b_norm
        mv, sv = self.H.counters.snapshot()
        mv0, sv0 = self._counters0
        return KrylovDecomposition(
            method="HL",
            S=S,
            Htilde=Htilde,
            left_inverse="j_symplectic",
            start_coord=start,
            remainder_scalar=self.betas[k - 1],
            remainder_index=2 * k,
            remainder_vector=self.us[k] if len(self.us) > k else None,
            breakdown=self.breakdown,
            breakdown_step=self.breakdown_step,
            cost=OperationCost(mv - mv0, sv - sv0, self.inner_products),
        )


def hamiltonian_lanczos(H, b, pairs, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """J-orthogonal basis of dimension 2*pairs via the short recurrence.

    Two matvecs and three inner products per pair; the projected matrix
    is assembled from the recurrence coefficients, never by explicit
    projection.
    """
    if pairs < 1:
        raise ValueError("need at least one pair")
    proc = HamiltonianLanczosProcess(H, b, tol=tol, rejorth=rejorth)
    for _ in range(pairs):
        if not proc.step():
            break
    return proc.to_decomposition()


def symplectic_arnoldi(H, b, pairs, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """Orthogonal symplectic basis [V, -JV] of dimension 2*pairs.

    An Arnoldi u-sequence drives the recurrence; every new u is then
    orthogonalized against the previous v's in both the Euclidean and
    the J inner product to produce the next v.  The projected matrix is
    formed by explicit projection with the J-symplectic left inverse
    and symmetrized so that J*Htilde is exactly symmetric.

    One matvec per requested pair is spent, the final one being the
    trailing step of the driving recurrence.
    """
    if pairs < 1:
        raise ValueError("need at least one pair")
    b, nb = _check_b(b)
    counters0 = H.counters.snapshot()
    u1 = b / nb
    us = [u1]
    vs = [u1.copy()]
    ips = 0
    breakdown = False
    breakdown_step = None
    for j in range(1, pairs + 1):
        z = H.matvec(us[j - 1])
        for i in range(j):
            z -= (us[i] @ z) * us[i]
        ips += j
        if rejorth:
            for i in range(j):
                z -= (us[i] @ z) * us[i]
        nz = float(np.linalg.norm(z))
        if nz < tol:
            if len(vs) < pairs:
                breakdown = True
                breakdown_step = j
            break
        unext = z / nz
        us.append(unext)
        if len(vs) < pairs:
            v = unext.copy()
            sweeps = 2 if rejorth else 1
            for _ in range(sweeps):
                for i in range(len(vs)):
                    v -= (vs[i] @ v) * vs[i]
                    jvi = apply_j(vs[i])
                    v -= (jvi @ v) * jvi
            ips += 2 * len(vs)
            nv = float(np.linalg.norm(v))
            if nv < tol:
                breakdown = True
                breakdown_step = j
                break
            vs.append(v / nv)
    V = np.column_stack(vs)
    S = np.hstack([V, -apply_j(V)])
    # projection phase: Htilde = J_k^T S^T J (H S), then the symmetric
    # part of J*Htilde is kept, making Htilde exactly Hamiltonian
    P = S.T @ apply_j(H.matmat(S))
    Psym = (P + P.T) * 0.5
    Htilde = -apply_j(Psym)
    mv, sv = H.counters.snapshot()
    mv0, sv0 = counters0
    return KrylovDecomposition(
        method="SA",
        S=S,
        Htilde=Htilde,
        left_inverse="j_symplectic",
        start_coord=_j_symplectic_start(S, b),
        remainder_scalar=None,
        remainder_index=None,
        remainder_vector=None,
        breakdown=breakdown,
        breakdown_step=breakdown_step,
        cost=OperationCost(mv - mv0, sv - sv0, ips),
    )


def isotropic_arnoldi(H, b, pairs, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """Isotropic basis [U, -JU] of dimension 2*pairs.

    Arnoldi orthogonalization is supplemented by a J-orthogonalization
    step, keeping span(U) isotropic: U^T J U = 0.  The projected matrix
    [[T, N], [-D, -T^T]] is assembled from the recurrence coefficients
    t_ij, d_jj and a mirrored block N, which makes it exactly
    Hamiltonian.  The N coefficients involve products H (J u_j); they
    are computed in a bulk projection pass after the recurrence, so one
    matvec per pair is charged.
    """
    if pairs < 1:
        raise ValueError("need at least one pair")
    b, nb = _check_b(b)
    counters0 = H.counters.snapshot()
    us = [b / nb]
    tcols = []
    ds = []
    ips = 0
    breakdown = False
    breakdown_step = None
    for j in range(1, pairs + 1):
        z = H.matvec(us[j - 1])
        col = np.zeros(j + 1)
        for i in range(j):
            tij = us[i] @ z
            z -= tij * us[i]
            col[i] = tij
        ips += j + 1
        if rejorth:
            for i in range(j):
                c = us[i] @ z
                z -= c * us[i]
                col[i] += c
        ju = apply_j(us[j - 1])
        d = float(ju @ z)
        z -= d * ju
        if rejorth:
            # full J-sweep; only the diagonal coefficient has a home in
            # the projected matrix, earlier corrections vanish in exact
            # arithmetic and are dropped
            for i in range(j):
                jui = apply_j(us[i])
                c = jui @ z
                z -= c * jui
                if i == j - 1:
                    d += float(c)
        ds.append(d)
        tnext = float(np.linalg.norm(z))
        col[j] = tnext
        tcols.append(col)
        if tnext < tol:
            breakdown = True
            breakdown_step = j
            break
        us.append(z / tnext)
    k = len(tcols)
    U = np.column_stack(us[:k])
    T = np.zeros((k, k))
    for j, col in enumerate(tcols):
        rows = min(j + 2, k)
        T[:rows, j] = col[:rows]
    JU = apply_j(U)
    # bulk projection pass for the symmetric block N
    M0 = -(U.T @ H.matmat(JU))
    N = np.triu(M0) + np.triu(M0, 1).T
    Htilde = np.block([[T, N], [-np.diag(ds), -T.T]])
    S = np.hstack([U, -JU])
    mv, sv = H.counters.snapshot()
    mv0, sv0 = counters0
    return KrylovDecomposition(
        method="IA",
        S=S,
        Htilde=Htilde,
        left_inverse="j_symplectic",
        start_coord=_j_symplectic_start(S, b),
        remainder_scalar=None,
        remainder_index=None,
        remainder_vector=None,
        breakdown=breakdown,
        breakdown_step=breakdown_step,
        cost=OperationCost(mv - mv0, sv - sv0, ips),
    )


def heks(H, b, blocks, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """Extended Krylov basis from powers of H and H^{-1}.

    Builds ``blocks`` quadruples (u_j, v_j, x_j, y_j) spanning
    K_{2l}(H, u) + K_{2l}(H^{-1}, H^{-1}u), ordered as
    S = [y_l..y_1, u_1..u_l, x_l..x_1, v_1..v_l].  The projected matrix
    has an exact sparsity pattern: three diagonals, one symmetric
    tridiagonal block and one anti-bidiagonal block, assembled from the
    recurrence coefficients.

    Requires a nonsingular operator; 4*blocks matvecs and 3*blocks - 1
    linear solves are charged.  Note S e_1 is not u: the starting
    coordinates are computed through the J-symplectic left inverse.
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    b, nb = _check_b(b)
    counters0 = H.counters.snapshot()

    us, vs, xs, ys = [], [], [], []
    thetas, lams, dels, alphas, gammas = [], [], [], [], []
    betas, mus = [None], [None]
    mcols, ncols = [], []
    ips = 0
    breakdown = False
    breakdown_step = None

    def project(w, extra=None):
        if not rejorth:
            return w
        M = mcols + ([extra[0]] if extra else [])
        N = ncols + ([extra[1]] if extra else [])
        if not M:
            return w
        return _project_out_pairs(np.column_stack(M), np.column_stack(N), w)

    def add_u_pair(u, v, theta):
        us.append(u)
        vs.append(v)
        thetas.append(theta)
        mcols.append(u)
        ncols.append(v)

    def add_x_pair(x, y):
        xs.append(x)
        ys.append(y)
        mcols.append(y)
        ncols.append(x)

    def rollback(nblocks):
        del us[nblocks:], vs[nblocks:], thetas[nblocks:]
        del xs[nblocks:], ys[nblocks:], lams[nblocks:], dels[nblocks:]
        del alphas[nblocks:], gammas[nblocks:], betas[nblocks:], mus[nblocks:]
        del mcols[2 * nblocks :], ncols[2 * nblocks :]

    # first block: forward direction u_1, v_1 = H u_1 / theta_1,
    # inverse direction x_1, y_1 from H^{-1} u_1 and H^{-1} x_1
    u = b / nb
    zu = H.matvec(u)
    theta = float(u @ apply_j(zu))
    ips += 1
    if abs(theta) < tol:
        raise BreakdownError("breakdown before the first block completed")
    add_u_pair(u, zu / theta, theta)

    s_u = H.solve(u)
    f = float(u @ apply_j(s_u))
    ips += 1
    wx = project(s_u - f * vs[0])
    nwx = float(np.linalg.norm(wx))
    if nwx < tol:
        raise BreakdownError("breakdown before the first block completed")
    x = wx / nwx
    s_x = H.solve(x)
    d = float(s_x @ apply_j(x))
    ips += 1
    if abs(d) < tol:
        raise BreakdownError("breakdown before the first block completed")
    add_x_pair(x, project(s_x / d))

    lams.append(-float(xs[0] @ apply_j(H.matvec(xs[0]))))
    dels.append(float(ys[0] @ apply_j(H.matvec(ys[0]))))
    zv = H.matvec(vs[0])
    alphas.append(-float(vs[0] @ apply_j(zv)))
    gammas.append(-float(xs[0] @ apply_j(zv)))
    ips += 4
    prev_zv = zv
    prev_su = s_u

    for j in range(2, blocks + 1):
        # forward pair: five-term recurrence driven by H v_{j-1}
        wu = prev_zv - gammas[j - 2] * ys[j - 2] - alphas[j - 2] * us[j - 2]
        if j >= 3:
            wu = wu - mus[j - 2] * ys[j - 3] - betas[j - 2] * us[j - 3]
        wu = project(wu)
        nwu = float(np.linalg.norm(wu))
        if nwu < tol:
            breakdown = True
            breakdown_step = j
            break
        u = wu / nwu
        zu = H.matvec(u)
        theta = float(u @ apply_j(zu))
        ips += 1
        if abs(theta) < tol:
            breakdown = True
            breakdown_step = j
            break
        v = project(zu / theta)
        add_u_pair(u, v, theta)

        # inverse pair: recurrence driven by H^{-1} y_{j-1}; the solve
        # with u_j is kept explicit, which pins the 3l - 1 solve count
        s_uj = H.solve(u)
        w = H.solve(ys[j - 2])
        e_curr = float(ys[j - 2] @ apply_j(w))
        g_prev = float(ys[j - 2] @ apply_j(prev_su))
        g_curr = float(ys[j - 2] @ apply_j(s_uj))
        ips += 3
        wx = w - e_curr * xs[j - 2] - g_prev * vs[j - 2] - g_curr * v
        if j >= 3:
            # symmetry of J H^{-1} gives the off-diagonal coefficient
            # without another solve
            e_off = float(ys[j - 3] @ apply_j(w))
            ips += 1
            wx = wx - e_off * xs[j - 3]
        wx = project(wx)
        nwx = float(np.linalg.norm(wx))
        if nwx < tol:
            rollback(j - 1)
            breakdown = True
            breakdown_step = j
            break
        x = wx / nwx
        s_x = H.solve(x)
        d = float(s_x @ apply_j(x))
        ips += 1
        if abs(d) < tol:
            rollback(j - 1)
            breakdown = True
            breakdown_step = j
            break
        add_x_pair(x, project(s_x / d))

        lams.append(-float(x @ apply_j(H.matvec(x))))
        dels.append(float(ys[j - 1] @ apply_j(H.matvec(ys[j - 1]))))
        zv = H.matvec(v)
        alphas.append(-float(v @ apply_j(zv)))
        gammas.append(-float(x @ apply_j(zv)))
        # symmetry of J H turns the couplings to the previous block into
        # inner products with the current H v_j
        betas.append(-float(vs[j - 2] @ apply_j(zv)))
        mus.append(-float(xs[j - 2] @ apply_j(zv)))
        ips += 6
        prev_zv = zv
        prev_su = s_uj

    ell = len(us)
    S = np.column_stack(ys[::-1] + us + xs[::-1] + vs)
    Htilde = np.zeros((4 * ell, 4 * ell))
    Htilde[:ell, 2 * ell : 3 * ell] = np.diag(lams[::-1])
    Htilde[2 * ell : 3 * ell, :ell] = np.diag(dels[::-1])
    Htilde[3 * ell :, ell : 2 * ell] = np.diag(thetas)
    T = np.diag(alphas)
    for i in range(1, ell):
        T[i - 1, i] = T[i, i - 1] = betas[i]
    Htilde[ell : 2 * ell, 3 * ell :] = T
    B = np.zeros((ell, ell))
    for i in range(ell):
        B[ell - 1 - i, i] = gammas[i]
        if i >= 1:
            B[ell - i, i] = mus[i]
    Htilde[:ell, 3 * ell :] = B
    Htilde[ell : 2 * ell, 2 * ell : 3 * ell] = B.T
    mv, sv = H.counters.snapshot()
    mv0, sv0 = counters0
    return KrylovDecomposition(
        method="HEKS",
        S=S,
        Htilde=Htilde,
        left_inverse="j_symplectic",
        start_coord=_j_symplectic_start(S, b),
        remainder_scalar=None,
        remainder_index=None,
        remainder_vector=None,
        breakdown=breakdown,
        breakdown_step=breakdown_step,
        cost=OperationCost(mv - mv0, sv - sv0, ips),
    )


def block_j_orthogonal(H, b, steps, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True, rank_tol=1e-12):
    """Basis from the split halves of an Arnoldi basis.

    Runs ``steps`` Arnoldi iterations, splits U into its top and bottom
    n-row halves, orthonormalizes [U_top, U_bottom] into W (deflating
    dependent columns), and returns S = blkdiag(W, W).  S is both
    orthonormal and J-orthogonal; the projected matrix is assembled from
    W^T E W, W^T B W, W^T C W with the symmetric blocks symmetrized, so
    it is exactly Hamiltonian.  The basis dimension is 2w for w the
    numerical rank of the split matrix, up to four times the Arnoldi
    dimension.
    """
    inner = arnoldi(H, b, steps, tol=tol, rejorth=rejorth)
    n = H.n
    U = inner.S
    W = qr_orthonormalize(np.hstack([U[:n, :], U[n:, :]]), rank_tol=rank_tol)
    w = W.shape[1]
    if w == 0:
        raise BreakdownError("split Arnoldi basis has rank zero")
    G = W.T @ (H.E @ W)
    Braw = W.T @ (H.B @ W)
    Craw = W.T @ (H.C @ W)
    Htilde = np.block(
        [[G, (Braw + Braw.T) * 0.5], [(Craw + Craw.T) * 0.5, -G.T]]
    )
    S = np.zeros((2 * n, 2 * w))
    S[:n, :w] = W
    S[n:, w:] = W
    b = np.asarray(b, dtype=float)
    return KrylovDecomposition(
        method="BJ",
        S=S,
        Htilde=Htilde,
        left_inverse="transpose",
        start_coord=S.T @ b,
        remainder_scalar=None,
        remainder_index=None,
        remainder_vector=None,
        breakdown=inner.breakdown,
        breakdown_step=inner.breakdown_step,
        cost=inner.cost,
    )


def build_decomposition(method, H, b, r, tol=DEFAULT_BREAKDOWN_TOL, rejorth=True):
    """Build a decomposition targeting basis dimension 2r by method tag.

    The step count is normalized per method: A and BJ run 2r Arnoldi
    steps, HL/SA/IA run r, and HEKS runs r // 2 blocks (odd r rounds
    the dimension down to 2r - 2; r must be at least 2).  BJ inflates
    the dimension up to 8r through its block splitting.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if method == "A":
        return arnoldi(H, b, 2 * r, tol=tol, rejorth=rejorth)
    if method == "HL":
        return hamiltonian_lanczos(H, b, r, tol=tol, rejorth=rejorth)
    if method == "SA":
        return symplectic_arnoldi(H, b, r, tol=tol, rejorth=rejorth)
    if method == "IA":
        return isotropic_arnoldi(H, b, r, tol=tol, rejorth=rejorth)
    if method == "HEKS":
        if r < 2:
            raise ValueError("extended Krylov needs r >= 2")
        return heks(H, b, r // 2, tol=tol, rejorth=rejorth)
    if method == "BJ":
        return block_j_orthogonal(H, b, 2 * r, tol=tol, rejorth=rejorth)
    raise ValueError(f"unknown method {method!r}, expected one of {METHOD_IDS}")
