"""Independence numbers of non-commutative graphs: verification, heuristic
lower-bound search, and the certified upper bounds.

For a general operator space the independence number is only bracketed: a
verified orthonormal family gives the lower end, while the dimension-count
bounds and the quantum Lovasz number give the upper end.  Point values are
reported only for spaces recognized as classical graph spaces, where exact
brute force applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotProjectorError, ShapeMismatchError
from . import graphs as graphmod
from . import lmi
from .linalg import RANK_TOL, as_matrix, dagger
from .spaces import OperatorSpace, require_nc_graph
from .theta import theta_tilde


@dataclass(frozen=True)
class IndependentSetCandidate:
    vectors: np.ndarray  # (N, d), rows pairwise orthonormal
    residual: float

    @property
    def size(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class SearchConfig:
    # base step calibrated on planted-pair instances: smaller steps stall on
    # the shallow basins these quartic landscapes develop by d = 4; the
    # backtracking keeps larger base steps safe elsewhere
    restarts: int = 50
    iters: int = 400
    step: float = 0.5
    seed: int = 0
    tol: float = 1e-8


@dataclass(frozen=True)
class BoundsReport:
    alpha_lower: int
    alpha_upper: int
    theta_tilde_upper: float
    pair_dim_upper: int
    alpha_hat_upper: int
    ambient_upper: int
    witness: IndependentSetCandidate | None = None
    notes: dict = field(default_factory=dict)


def verify_independent_set(s: OperatorSpace, vectors, tol: float = 1e-8) -> tuple[bool, float]:
    """Check pairwise orthonormality and that every |phi_m><phi_m'| (m != m')
    projects to zero on S.  Returns (ok, worst residual)."""
    require_nc_graph(s)
    v = np.asarray(vectors, dtype=np.complex128)
    if v.ndim != 2 or v.shape[1] != s.ambient_dim:
        raise ShapeMismatchError(f"vectors must be rows of length {s.ambient_dim}")
    gram = v.conj() @ v.T
    ortho = float(np.max(np.abs(gram - np.eye(v.shape[0]))))
    if ortho > 1e-9 * (1 + v.shape[0]):
        return False, ortho
    worst = 0.0
    for m in range(v.shape[0]):
        for mp in range(v.shape[0]):
            if m == mp:
                continue
            outer = np.outer(v[m], v[mp].conj())
            worst = max(worst, float(np.linalg.norm(s.project(outer))))
    return worst <= tol, worst


def _penalty(basis: np.ndarray, v: np.ndarray) -> float:
    t = np.einsum("kij,pi,qj->kpq", basis.conj(), v, v.conj())
    tm = t * ~np.eye(v.shape[0], dtype=bool)
    return float(np.sum(np.abs(tm) ** 2))


def _penalty_grad(basis: np.ndarray, v: np.ndarray) -> tuple[float, np.ndarray]:
    """Penalty sum_{p != q} ||Pi_S |phi_p><phi_q|||^2 with its Wirtinger
    gradient (derivative in conj(v); -gradient is a descent direction)."""
    # t[k,p,q] = <F_k, |phi_p><phi_q|>_HS
    t = np.einsum("kij,pi,qj->kpq", basis.conj(), v, v.conj())
    mask = ~np.eye(v.shape[0], dtype=bool)
    tm = t * mask
    val = float(np.sum(np.abs(tm) ** 2))
    m1 = np.einsum("pa,kac->kpc", v, basis.conj())
    m2 = np.einsum("kcb,qb->kqc", basis, v)
    g = np.einsum("kpr,kpc->rc", tm.conj(), m1) + np.einsum("krq,kqc->rc", tm, m2)
    return val, g


def alpha_lower_search(
    s: OperatorSpace, target_n: int, config: SearchConfig = SearchConfig()
) -> IndependentSetCandidate | None:
    """Search for target_n pairwise non-confusable unit vectors.

    Projected gradient descent on the orthonormal-frame manifold, with polar
    re-orthonormalization each step; a candidate is returned only when it
    passes verify_independent_set, and failure proves nothing.
    """
    require_nc_graph(s)
    d = s.ambient_dim
    if not 1 <= target_n <= d:
        return None
    if target_n == 1:
        e = np.zeros((1, d), dtype=np.complex128)
        e[0, 0] = 1.0
        return IndependentSetCandidate(e, 0.0)
    basis = s.basis
    rng = np.random.default_rng(np.uint64(config.seed))

    def polar_rows(v):
        u, _, wt = np.linalg.svd(v, full_matrices=False)
        return u @ wt

    for _ in range(config.restarts):
        v = rng.standard_normal((target_n, d)) + 1j * rng.standard_normal((target_n, d))
        v = polar_rows(v)
        step = config.step
        for _ in range(config.iters):
            val, g = _penalty_grad(basis, v)
            if val < 1e-18:
                break
            # monotone backtracking keeps the large base step safe
            while step > 1e-3:
                cand = polar_rows(v - step * g)
                if _penalty(basis, cand) <= val:
                    break
                step *= 0.5
            v = cand
            step = min(step * 1.3, config.step)
        ok, residual = verify_independent_set(s, v, config.tol)
        if ok:
            return IndependentSetCandidate(v, residual)
    return None


def pair_dim_upper(s: OperatorSpace) -> int:
    """Largest k with k(k-1) <= dim S_perp, capped at the ambient dimension.

    An independent set of size k supplies k(k-1) mutually HS-orthogonal
    operators inside the complement, so its dimension caps k.
    """
    require_nc_graph(s)
    d = s.ambient_dim
    perp_dim = d * d - s.dim
    k = 1
    while (k + 1) * k <= perp_dim:
        k += 1
    return min(k, d)


def alpha_hat_upper(s: OperatorSpace) -> int:
    """1 + dim S_perp, bounding the most permissive independence number and
    thereby everything below it in the chain."""
    require_nc_graph(s)
    return 1 + s.ambient_dim**2 - s.dim


def verify_kl_projector(s: OperatorSpace, p, tol: float = 1e-8) -> tuple[bool, int]:
    """Knill-Laflamme check: PFP must be a scalar multiple of P for every
    basis element F.  Returns (ok, code dimension)."""
    p = as_matrix(p)
    if np.linalg.norm(p @ p - p) > tol * (1 + np.linalg.norm(p)) or np.linalg.norm(
        p - dagger(p)
    ) > tol * (1 + np.linalg.norm(p)):
        raise NotProjectorError("input is not an orthogonal projector")
    rank = int(round(float(np.trace(p).real)))
    for f in s.basis:
        pfp = p @ f @ p
        lam = np.trace(pfp) / max(rank, 1)
        if np.linalg.norm(pfp - lam * p) > tol:
            return False, rank
    return True, rank


def _classical_pattern(s: OperatorSpace) -> graphmod.Graph | None:
    """Recognize spaces that are classical graph spaces in the computational
    basis: spanned by matrix units on the diagonal plus symmetric off-diagonal
    pairs.  No basis rotation is attempted."""
    d = s.ambient_dim
    support = np.zeros((d, d), dtype=bool)
    for f in s.basis:
        support |= np.abs(f) > RANK_TOL * (1 + np.linalg.norm(f))
    if not np.all(np.diag(support)):
        return None
    if not np.array_equal(support, support.T):
        return None
    n_pattern = int(np.count_nonzero(support))
    if s.dim != n_pattern:
        return None
    for i in range(d):
        for j in range(d):
            if support[i, j]:
                unit = np.zeros((d, d), dtype=np.complex128)
                unit[i, j] = 1.0
                if not s.contains(unit):
                    return None
    adj = support.copy()
    np.fill_diagonal(adj, False)
    return graphmod.Graph(d, adj)


def bounds(
    s: OperatorSpace,
    config: SearchConfig = SearchConfig(),
    opts: lmi.SolveOptions = lmi.SolveOptions(),
    theta_sides: str = "both",
) -> BoundsReport:
    """Aggregate the certified bracket on the independence number."""
    require_nc_graph(s)
    d = s.ambient_dim
    tt = theta_tilde(s, opts, sides=theta_sides)
    pair_ub = pair_dim_upper(s)
    hat_ub = alpha_hat_upper(s)
    theta_floor = int(np.floor(tt.value + 1e-6))
    alpha_upper = min(pair_ub, hat_ub, theta_floor, d)

    witness = None
    notes = {}
    g = _classical_pattern(s)
    if g is not None and d <= 24:
        exact, members = graphmod.alpha_brute(g)
        alpha_lower = exact
        vecs = np.zeros((exact, d), dtype=np.complex128)
        for row, v in enumerate(members):
            vecs[row, v] = 1.0
        witness = IndependentSetCandidate(vecs, 0.0)
        notes["classical"] = True
    else:
        alpha_lower = 1
        for target in range(min(alpha_upper, d), 1, -1):
            cand = alpha_lower_search(s, target, config)
            if cand is not None:
                alpha_lower = cand.size
                witness = cand
                break
    return BoundsReport(
        alpha_lower=alpha_lower,
        alpha_upper=alpha_upper,
        theta_tilde_upper=tt.value,
        pair_dim_upper=pair_ub,
        alpha_hat_upper=hat_ub,
        ambient_upper=d,
        witness=witness,
        notes=notes,
    )
