"""Lovasz-type invariants of classical graphs and operator spaces.

``theta_classical`` evaluates the original graph theta through its
minimax semidefinite form.  ``theta_tilde_primal`` / ``theta_tilde_dual``
evaluate the quantum extension on a non-commutative graph S < L(A) as a
pair of semidefinite programs over an extension space A' of the same
dimension:

    primal:  max <Phi| (1 (x) rho + T') |Phi>
             with T' in S_perp (x) L(A'), rho a state, 1 (x) rho + T' >= 0
    dual:    min || tr_A Y ||  with  Y in S (x) L(A'), Y >= Phi

where Phi is the unnormalized maximally entangled projector (trace |A|).
Strong duality holds (both programs have strictly feasible points), so the
two values agree; the dual optimum is reported as the canonical value since
any dual-feasible point is a rigorous upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GapTooLargeError, SolverError
from .graphs import Graph
from .linalg import eigh, max_entangled
from . import lmi
from .spaces import OperatorSpace, hermitian_basis, orth_complement, require_nc_graph

GAP_CHECK_TOL = 1e-4


@dataclass(frozen=True)
class ThetaResult:
    value: float
    primal_value: float | None = None
    dual_value: float | None = None
    gap: float = 0.0
    witness: dict = field(default_factory=dict)
    solver_stats: dict = field(default_factory=dict)


def _traceless_herm_basis(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann style HS-orthonormal traceless Hermitian basis."""
    out = []
    for k in range(1, d):
        m = np.zeros((d, d), dtype=np.complex128)
        m[np.diag_indices(k)] = 1.0
        m[k, k] = -k
        out.append(m / np.sqrt(k * (k + 1)))
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=np.complex128)
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2)
            out.append(m)
            m = np.zeros((d, d), dtype=np.complex128)
            m[i, j] = -1j / np.sqrt(2)
            m[j, i] = 1j / np.sqrt(2)
            out.append(m)
    return out


def _full_herm_basis(d: int) -> list[np.ndarray]:
    return [np.eye(d, dtype=np.complex128) / np.sqrt(d)] + _traceless_herm_basis(d)


def _trivial_result() -> ThetaResult:
    return ThetaResult(value=1.0, primal_value=1.0, dual_value=1.0)


def _solved(problem: lmi.LmiProblem, opts: lmi.SolveOptions) -> lmi.LmiSolution:
    sol = lmi.solve(problem, opts)
    if not sol.optimal:
        raise SolverError(sol.status)
    return sol


def theta_tilde_dual(s: OperatorSpace, opts: lmi.SolveOptions = lmi.SolveOptions()) -> ThetaResult:
    """min ||tr_A Y|| over Y in S (x) L(A') with Y >= Phi.

    Variables are t and the coefficients of Y in a Hermitian product basis;
    blocks are Y - Phi >= 0 and t 1 - tr_A Y >= 0.  Any feasible point gives
    a true upper bound on the quantum Lovasz number, even far from optimal.
    """
    require_nc_graph(s)
    d = s.ambient_dim
    if d == 1:
        return _trivial_result()
    f_basis = hermitian_basis(s)  # identity-first: only f_basis[0] has a trace
    g_basis = _full_herm_basis(d)
    k, d2 = len(f_basis), d * d
    m = 1 + k * d2
    _, phi = max_entangled(d)

    var_idx = 1 + np.arange(k * d2)
    big = lmi.KronBlock(
        -phi,
        np.array(f_basis),
        np.array(g_basis),
        var_idx,
        np.repeat(np.arange(k), d2),
        np.tile(np.arange(d2), k),
        np.ones(k * d2),
        m,
    )
    fs2 = np.zeros((m, d, d), dtype=np.complex128)
    fs2[0] = np.eye(d)
    for alpha, f in enumerate(f_basis):
        tr = float(np.trace(f).real)
        if abs(tr) > 1e-13:
            for beta, g in enumerate(g_basis):
                fs2[1 + alpha * d2 + beta] = -tr * g
    trace_block = lmi.DenseBlock(np.zeros((d, d)), fs2)

    c = np.zeros(m)
    c[0] = 1.0
    sol = _solved(lmi.LmiProblem(c, [big, trace_block], lmi.MINIMIZE), opts)
    y_mat = big.assemble(sol.y, include_f0=False)
    return ThetaResult(
        value=sol.value,
        dual_value=sol.value,
        gap=sol.gap,
        witness={"Y": y_mat},
        solver_stats={"dual": {"iterations": sol.iterations, "solver_gap": sol.gap}},
    )


def theta_tilde_primal(s: OperatorSpace, opts: lmi.SolveOptions = lmi.SolveOptions()) -> ThetaResult:
    """max <Phi|(1 (x) rho + T')|Phi> over states rho and T' in S_perp (x) L(A').

    The trace constraint on rho is eliminated by the affine substitution
    rho = 1/d + (traceless part), leaving blocks rho >= 0 and
    1 (x) rho + T' >= 0 with a linear objective.
    """
    require_nc_graph(s)
    d = s.ambient_dim
    if d == 1:
        return _trivial_result()
    perp = orth_complement(s)
    f_perp = hermitian_basis(perp) if perp.dim else []
    g_basis = _full_herm_basis(d)
    h_basis = g_basis[1:]  # traceless directions parameterize rho
    kp, d2 = len(f_perp), d * d
    m = kp * d2 + (d2 - 1)

    rho_fs = np.zeros((m, d, d), dtype=np.complex128)
    for gamma, h in enumerate(h_basis):
        rho_fs[kp * d2 + gamma] = h
    rho_block = lmi.DenseBlock(np.eye(d) / d, rho_fs)

    left = np.array([np.eye(d, dtype=np.complex128)] + f_perp)
    var_idx = np.concatenate([np.arange(kp * d2), kp * d2 + np.arange(d2 - 1)])
    left_idx = np.concatenate([1 + np.repeat(np.arange(kp), d2), np.zeros(d2 - 1, dtype=int)])
    right_idx = np.concatenate([np.tile(np.arange(d2), kp), 1 + np.arange(d2 - 1)])
    big = lmi.KronBlock(
        np.eye(d2, dtype=np.complex128) / d,
        left,
        np.array(g_basis),
        var_idx,
        left_idx,
        right_idx,
        np.ones(m),
        m,
    )

    c = np.zeros(m)
    for alpha, f in enumerate(f_perp):
        for beta, g in enumerate(g_basis):
            c[alpha * d2 + beta] = float(np.sum(f * g).real)  # <Phi|F (x) G|Phi>
    sol = _solved(lmi.LmiProblem(c, [rho_block, big], lmi.MAXIMIZE), opts)

    value = 1.0 + sol.value  # tr(rho) = 1 contributes the constant
    rho = rho_block.assemble(sol.y)
    t_mat = big.assemble(np.where(np.arange(m) < kp * d2, sol.y, 0.0), include_f0=False)
    return ThetaResult(
        value=value,
        primal_value=value,
        gap=sol.gap,
        witness={"rho": rho, "T": t_mat},
        solver_stats={"primal": {"iterations": sol.iterations, "solver_gap": sol.gap}},
    )


def theta_tilde(
    s: OperatorSpace,
    opts: lmi.SolveOptions = lmi.SolveOptions(),
    sides: str = "both",
) -> ThetaResult:
    """Quantum Lovasz number of a non-commutative graph.

    By default both semidefinite forms are solved and cross-checked; the
    dual optimum is the reported value.  ``sides`` may be "dual" or
    "primal" to run a single form when the other would be needlessly large.
    """
    if sides == "dual":
        return theta_tilde_dual(s, opts)
    if sides == "primal":
        return theta_tilde_primal(s, opts)
    dual = theta_tilde_dual(s, opts)
    primal = theta_tilde_primal(s, opts)
    gap = abs(primal.value - dual.value)
    if gap > GAP_CHECK_TOL * (1.0 + abs(dual.value)):
        raise GapTooLargeError(primal.value, dual.value, GAP_CHECK_TOL)
    return ThetaResult(
        value=dual.value,
        primal_value=primal.value,
        dual_value=dual.value,
        gap=gap,
        witness={**dual.witness, **primal.witness},
        solver_stats={**dual.solver_stats, **primal.solver_stats},
    )


def theta_classical(g: Graph, opts: lmi.SolveOptions = lmi.SolveOptions()) -> ThetaResult:
    """Classical Lovasz theta: min over Y >= J, Y supported on the diagonal
    and the edges, of the largest diagonal entry."""
    n = g.n
    if n == 1:
        return ThetaResult(value=1.0, primal_value=1.0, dual_value=1.0)
    edges = g.edges
    m = 1 + n + len(edges)  # t, diagonal entries, one per edge

    fs = np.zeros((m, n, n))
    for x in range(n):
        fs[1 + x, x, x] = 1.0
    for e, (i, j) in enumerate(edges):
        fs[1 + n + e, i, j] = fs[1 + n + e, j, i] = 1.0
    psd_block = lmi.DenseBlock(-np.ones((n, n)), fs)

    scalar_fs = np.zeros((m, n, n))
    scalar_f0 = np.zeros((n, n))
    # n scalar constraints t - Y_xx >= 0 packed as one diagonal block
    for x in range(n):
        scalar_fs[0, x, x] = 1.0
        scalar_fs[1 + x, x, x] = -1.0
    diag_block = lmi.DenseBlock(scalar_f0, scalar_fs)

    c = np.zeros(m)
    c[0] = 1.0
    sol = _solved(lmi.LmiProblem(c, [psd_block, diag_block], lmi.MINIMIZE), opts)
    y_mat = psd_block.assemble(sol.y, include_f0=False)
    return ThetaResult(
        value=sol.value,
        dual_value=sol.value,
        gap=sol.gap,
        witness={"Y": y_mat},
        solver_stats={"classical": {"iterations": sol.iterations, "solver_gap": sol.gap}},
    )


def theta_naive_lower(
    s: OperatorSpace,
    restarts: int = 10,
    iters: int = 25,
    seed: int = 0,
    extra_seeds: tuple = (),
    opts: lmi.SolveOptions = lmi.SolveOptions(),
) -> float:
    """Certified lower bound on max{||1 + T|| : T in S_perp, 1 + T >= 0}.

    The norm objective is non-convex, so this alternates an exact linear
    subproblem (fix a unit vector phi, maximize <phi|(1+T)|phi> over feasible
    T) with a top-eigenvector update of phi; the objective never decreases.
    Restart vectors include random directions and, on square ambient
    dimensions, the normalized maximally entangled vector.
    """
    require_nc_graph(s)
    d = s.ambient_dim
    perp = orth_complement(s)
    if perp.dim == 0:
        return 1.0
    f_perp = hermitian_basis(perp)
    fs = np.array(f_perp)
    block = lmi.DenseBlock(np.eye(d), fs)

    starts: list[np.ndarray] = [np.asarray(v, dtype=np.complex128) for v in extra_seeds]
    r = math.isqrt(d)
    if r * r == d:
        vec, _ = max_entangled(r)
        starts.append(vec / np.linalg.norm(vec))
    rng = np.random.default_rng(np.uint64(seed))
    for _ in range(restarts):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        starts.append(v / np.linalg.norm(v))

    best = 1.0
    for phi in starts:
        prev = -np.inf
        for _ in range(iters):
            c = np.array([float((phi.conj() @ f @ phi).real) for f in f_perp])
            sol = lmi.solve(lmi.LmiProblem(c, [block], lmi.MAXIMIZE), opts)
            if not sol.optimal:
                break
            t_mat = np.tensordot(sol.y, fs, axes=1)
            dec = eigh(np.eye(d) + t_mat)
            top = float(dec.eigenvalues[-1])
            best = max(best, top)
            if top <= prev + 1e-9:
                break
            prev = top
            phi = dec.eigenvectors[:, -1]
    return best


def identity_witness(d: int) -> np.ndarray:
    """The extremal operator d^2 * Phi_state - 1 on C^d (x) C^d.

    It lies in (1_d)_perp (x) L(C^d), satisfies 1 + T >= 0, and attains
    ||1 + T|| = d^2, exhibiting the gap between the naive norm program on
    span{1_d} alone and its value after tensoring with a complete graph.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    _, phi = max_entangled(d)
    return d * phi - np.eye(d * d, dtype=np.complex128)


@dataclass(frozen=True)
class CapacityReport:
    """log2 views of single-letter bounds; every asymptotic field is a bound,
    never a computed capacity."""

    theta_tilde_value: float
    entanglement_assisted_upper_log2: float  # bound on C_0E
    plain_upper_log2: float  # bound on C_0 (<= C_0E chain)
    alpha_lower: int
    alpha_lower_log2: float

    def as_dict(self) -> dict:
        return {
            "theta_tilde": self.theta_tilde_value,
            "C0E_upper_log2_BOUND": self.entanglement_assisted_upper_log2,
            "C0_upper_log2_BOUND": self.plain_upper_log2,
            "alpha_lower_BOUND": self.alpha_lower,
            "C0_lower_log2_BOUND": self.alpha_lower_log2,
        }


def capacity_report(s: OperatorSpace, opts: lmi.SolveOptions = lmi.SolveOptions()) -> CapacityReport:
    from .independence import bounds  # local import: independence builds on theta

    report = bounds(s, opts=opts)
    tt = report.theta_tilde_upper
    return CapacityReport(
        theta_tilde_value=tt,
        entanglement_assisted_upper_log2=math.log2(max(tt, 1.0)),
        plain_upper_log2=math.log2(max(tt, 1.0)),
        alpha_lower=report.alpha_lower,
        alpha_lower_log2=math.log2(max(report.alpha_lower, 1)),
    )
