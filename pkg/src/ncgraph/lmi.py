"""Interior-point solver for small dense linear matrix inequalities.

Problem shape: find y in R^m minimizing (or maximizing) c . y subject to

    F0^(b) + sum_i y_i Fi^(b)  >= 0   for every block b,

over Hermitian blocks (real symmetric data is the special case with zero
imaginary part).  The algorithm is an infeasible-start primal-dual
path-following method with Nesterov-Todd scaling and a Mehrotra
predictor-corrector, solving the m x m Schur complement by dense
factorization each iteration.  Everything is deterministic: no randomized
pivoting, no warm starts.

Two block encodings are supported.  ``DenseBlock`` stores the constraint
matrices explicitly.  ``KronBlock`` stores them as Kronecker products
``coef * left[a] (x) right[b]``, which lets the Schur complement be
assembled by tensor contractions instead of O(m^2 n^2) matrix products;
the tensor-product structure of the theta semidefinite programs makes this
the difference between seconds and hours on the larger instances.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NotHermitianError, ShapeMismatchError


class SolveStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    ITERATION_LIMIT = "IterationLimit"
    PRIMAL_INFEASIBLE = "PrimalInfeasible"
    DUAL_INFEASIBLE = "DualInfeasible"
    NUMERICAL_TROUBLE = "NumericalTrouble"


MINIMIZE = "min"
MAXIMIZE = "max"

_DIVERGENCE_FACTOR = 1e8


def _check_hermitian(m: np.ndarray, what: str):
    if np.linalg.norm(m - m.conj().T) > 1e-10 * (1.0 + np.linalg.norm(m)):
        raise NotHermitianError(f"{what} is not Hermitian/symmetric")


class DenseBlock:
    """Constraint block with explicit matrices F0, (Fi)_i.

    Variables whose constraint matrix is identically zero in this block are
    skipped in every kernel (common when a block constrains only a few of
    the problem variables).
    """

    def __init__(self, f0, fs):
        self.f0 = np.asarray(f0, dtype=np.complex128)
        self.fs = np.asarray(fs, dtype=np.complex128)
        n = self.f0.shape[0]
        if self.f0.shape != (n, n) or self.fs.ndim != 3 or self.fs.shape[1:] != (n, n):
            raise ShapeMismatchError("block matrices must be square and consistently sized")
        self.n = n
        norms = np.linalg.norm(self.fs.reshape(self.fs.shape[0], -1), axis=1)
        self._active = np.flatnonzero(norms > 0)
        self._fs_act = np.ascontiguousarray(self.fs[self._active])

    @property
    def num_vars(self) -> int:
        return self.fs.shape[0]

    def validate(self):
        _check_hermitian(self.f0, "F0")
        for i, f in enumerate(self._fs_act):
            _check_hermitian(f, f"F[{self._active[i]}]")

    def assemble(self, y, include_f0=True) -> np.ndarray:
        if len(self._active) == 0:
            out = np.zeros((self.n, self.n), dtype=np.complex128)
        else:
            out = np.tensordot(y[self._active], self._fs_act, axes=1)
        return out + self.f0 if include_f0 else out

    def dot_all(self, x) -> np.ndarray:
        # v_i = tr(F_i x), real for Hermitian arguments
        v = np.zeros(self.num_vars)
        if len(self._active):
            v[self._active] = np.einsum("kij,ji->k", self._fs_act, x).real
        return v

    def schur(self, w) -> np.ndarray:
        na, n = len(self._active), self.n
        if na == 0:
            return np.zeros((self.num_vars, self.num_vars))
        fw = (self._fs_act.reshape(na * n, n) @ w).reshape(na, n, n)
        # bt[k] = (w @ F_k @ w)^T, assembled without a batched tiny matmul
        bt = (
            np.ascontiguousarray(fw.transpose(0, 2, 1)).reshape(na * n, n) @ w.conj()
        ).reshape(na, n, n)
        m_act = (self._fs_act.reshape(na, -1) @ bt.reshape(na, -1).T).real
        m = np.zeros((self.num_vars, self.num_vars))
        m[np.ix_(self._active, self._active)] = m_act
        return m

    def gram(self) -> np.ndarray:
        """Constant Gram matrix tr(F_i F_j) of the constraint stack."""
        na = len(self._active)
        if na == 0:
            return np.zeros((self.num_vars, self.num_vars))
        ft = np.ascontiguousarray(self._fs_act.transpose(0, 2, 1))
        g_act = (self._fs_act.reshape(na, -1) @ ft.reshape(na, -1).T).real
        g = np.zeros((self.num_vars, self.num_vars))
        g[np.ix_(self._active, self._active)] = g_act
        return g


class KronBlock:
    """Constraint block whose F_i are coef * left[a] (x) right[b].

    ``terms`` maps variables to factored constraint matrices: each row
    (var, left_index, right_index) with a real coefficient contributes
    ``coef * kron(left[li], right[ri])`` to F_var.  Variables with no term
    have a zero constraint matrix in this block.
    """

    def __init__(self, f0, left, right, var_idx, left_idx, right_idx, coef, num_vars):
        self.f0 = np.asarray(f0, dtype=np.complex128)
        self.left = np.asarray(left, dtype=np.complex128)
        self.right = np.asarray(right, dtype=np.complex128)
        self.var_idx = np.asarray(var_idx, dtype=np.intp)
        self.left_idx = np.asarray(left_idx, dtype=np.intp)
        self.right_idx = np.asarray(right_idx, dtype=np.intp)
        self.coef = np.asarray(coef, dtype=np.float64)
        self._m = num_vars
        self.da = self.left.shape[1]
        self.db = self.right.shape[1]
        self.n = self.da * self.db
        if self.f0.shape != (self.n, self.n):
            raise ShapeMismatchError("F0 does not match the product dimension")
        self._q = self.right.shape[0]
        self._kpos = self.left_idx * self._q + self.right_idx
        # one factored term per variable is the common case and admits
        # pure gather/scatter Schur assembly
        self._unique_vars = len(np.unique(self.var_idx)) == len(self.var_idx)
        pq = self.left.shape[0] * self._q
        # fastest path: terms enumerate every factor pair once, in order,
        # with unit coefficients, over a contiguous variable range
        self._slice = None
        if (
            self._unique_vars
            and len(self.var_idx) == pq
            and np.array_equal(self._kpos, np.arange(pq))
            and np.all(self.coef == 1.0)
        ):
            lo = int(self.var_idx[0])
            if np.array_equal(self.var_idx, np.arange(lo, lo + pq)):
                self._slice = (lo, lo + pq)
        self._coef_outer = None if self._slice is not None else np.outer(self.coef, self.coef)

    @property
    def num_vars(self) -> int:
        return self._m

    def validate(self):
        _check_hermitian(self.f0, "F0")
        for stack, what in ((self.left, "left"), (self.right, "right")):
            for i, f in enumerate(stack):
                _check_hermitian(f, f"{what}[{i}]")

    def assemble(self, y, include_f0=True) -> np.ndarray:
        p, q = self.left.shape[0], self._q
        w = np.zeros((p, q))
        np.add.at(w, (self.left_idx, self.right_idx), self.coef * y[self.var_idx])
        r = np.einsum("aq,qcd->acd", w, self.right)
        out4 = np.einsum("aik,ajl->ijkl", self.left, r)
        out = out4.reshape(self.n, self.n)
        return out + self.f0 if include_f0 else out

    def _kernel_vec(self, x) -> np.ndarray:
        # tr((P_a (x) Q_b) X) for every factor pair (a, b)
        x4 = x.reshape(self.da, self.db, self.da, self.db)
        t1 = np.tensordot(self.left, x4, axes=([1, 2], [2, 0]))
        return np.tensordot(t1, self.right, axes=([1, 2], [2, 1])).real

    def dot_all(self, x) -> np.ndarray:
        kv = self._kernel_vec(x).ravel()
        v = np.zeros(self._m)
        np.add.at(v, self.var_idx, self.coef * kv[self._kpos])
        return v

    def schur(self, w) -> np.ndarray:
        # K[a,b,a',b'] = tr((P_a (x) Q_b) W (P_a' (x) Q_b') W), contracted in
        # an order that never forms the m x n^2 dense constraint stack; each
        # step is arranged as a single GEMM on contiguous reshapes
        p, q = self.left.shape[0], self._q
        da, db = self.da, self.db
        w4 = w.reshape(da, db, da, db)
        # u[a,x1; y2,x3,y3] = sum_x2 left[a,x1,x2] w4[x2; y2,x3,y3]
        u = self.left.reshape(p * da, da) @ w4.reshape(da, db * da * db)
        # v[a,x1,y2, a',x4] = sum_x3 u[a,x1,y2, x3, y3->] left[a',x3,x4]
        u = u.reshape(p * da * db, da, db).transpose(0, 2, 1).reshape(p * da * db * db, da)
        v = u @ self.left.transpose(1, 0, 2).reshape(da, p * da)
        # z[a,y2,y3,a',x4 -> pair with w4 over (x4, x1)]
        v = v.reshape(p, da, db, db, p, da)
        v = np.ascontiguousarray(v.transpose(0, 2, 3, 4, 5, 1)).reshape(p * db * db * p, da * da)
        wt = np.ascontiguousarray(w4.transpose(0, 2, 1, 3)).reshape(da * da, db * db)
        z = (v @ wt).reshape(p, db, db, p, db, db)
        # k1[a,a',b; y3,y4] = sum_{y1,y2} right[b,y1,y2] z[a,y2,y3,a',y4,y1]
        z = np.ascontiguousarray(z.transpose(0, 3, 2, 4, 1, 5)).reshape(p * p * db * db, db * db)
        rt = np.ascontiguousarray(self.right.transpose(2, 1, 0)).reshape(db * db, q)
        k1 = (z @ rt).reshape(p * p, db * db, q)
        # k[a,a',b,b'] = sum_{y3,y4} k1[a,a',y3,y4,b] right[b',y3,y4]
        k1 = np.ascontiguousarray(k1.transpose(0, 2, 1)).reshape(p * p * q, db * db)
        k = (k1 @ self.right.reshape(q, db * db).T).real
        k = k.reshape(p, p, q, q).transpose(0, 2, 1, 3).reshape(p * q, p * q)
        return self._scatter(k)

    def _scatter(self, k: np.ndarray) -> np.ndarray:
        """Map a kernel over factor pairs onto the variable-indexed matrix."""
        m = np.zeros((self._m, self._m))
        if self._slice is not None:
            lo, hi = self._slice
            m[lo:hi, lo:hi] = k
            return m
        sel = k[np.ix_(self._kpos, self._kpos)] * self._coef_outer
        if self._unique_vars:
            m[np.ix_(self.var_idx, self.var_idx)] = sel
        else:
            np.add.at(m, (self.var_idx[:, None], self.var_idx[None, :]), sel)
        return m

    def gram(self) -> np.ndarray:
        """Constant Gram matrix tr(F_i F_j) of the constraint stack."""
        p, q = self.left.shape[0], self._q
        gp = np.einsum("aij,bji->ab", self.left, self.left).real
        gq = np.einsum("aij,bji->ab", self.right, self.right).real
        return self._scatter(np.kron(gp, gq))


@dataclass(frozen=True)
class LmiProblem:
    objective: np.ndarray
    blocks: list
    sense: str = MINIMIZE

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def validate(self):
        if self.sense not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"unknown sense {self.sense!r}")
        for b in self.blocks:
            if b.num_vars != self.num_vars:
                raise ShapeMismatchError("block variable count does not match objective")
            b.validate()


@dataclass(frozen=True)
class SolveOptions:
    gap_tol: float = 1e-8
    feas_tol: float = 1e-8
    max_iter: int = 500
    step_frac: float = 0.98


@dataclass(frozen=True)
class LmiSolution:
    y: np.ndarray
    value: float
    status: SolveStatus
    gap: float
    iterations: int
    min_block_eigs: list[float] = field(default_factory=list)
    gap_history: tuple[float, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL


def validate(problem: LmiProblem, y) -> dict:
    """Recompute objective and block feasibility independently of the solver."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (problem.num_vars,):
        raise ShapeMismatchError("candidate length does not match variable count")
    eigs = []
    for b in problem.blocks:
        s = b.assemble(y)
        s = 0.5 * (s + s.conj().T)
        eigs.append(float(np.linalg.eigvalsh(s)[0]))
    return {"objective": float(problem.objective @ y), "min_block_eigs": eigs}


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _max_step(x: np.ndarray, dx: np.ndarray, chol: np.ndarray) -> float:
    """Largest alpha with x + alpha dx >= 0, given chol(x)."""
    rhs = np.linalg.solve(chol, dx)
    y = np.linalg.solve(chol, rhs.conj().T)
    lam = np.linalg.eigvalsh(_hermitize(y))[0]
    if lam >= -1e-14:
        return np.inf
    return -1.0 / lam


def _nt_scaling(x, s):
    """NT scaling point W with W S W = X, plus S^{-1}; via chol/eig factors."""
    lx = np.linalg.cholesky(x)
    m = _hermitize(lx.conj().T @ s @ lx)
    d, u = np.linalg.eigh(m)
    d = np.maximum(d, 1e-300)
    g = lx @ (u * d**-0.25)
    w = g @ g.conj().T
    s_inv = (g * d**-0.5) @ g.conj().T
    return _hermitize(w), _hermitize(s_inv)


def solve(problem: LmiProblem, opts: SolveOptions = SolveOptions()) -> LmiSolution:
    """Solve the LMI; on OPTIMAL the reported y is feasible within feas_tol
    and the value is within gap_tol * (1 + |value|) of the optimum."""
    problem.validate()
    m = problem.num_vars
    sign = 1.0 if problem.sense == MINIMIZE else -1.0
    c = sign * np.asarray(problem.objective, dtype=np.float64)
    blocks = problem.blocks
    if m == 0:
        eigs = [float(np.linalg.eigvalsh(_hermitize(b.assemble(np.zeros(0))))[0]) for b in blocks]
        ok = all(e >= -opts.feas_tol for e in eigs)
        return LmiSolution(
            np.zeros(0), 0.0,
            SolveStatus.OPTIMAL if ok else SolveStatus.PRIMAL_INFEASIBLE,
            0.0, 0, eigs,
        )

    n_total = sum(b.n for b in blocks)
    c_scale = 1.0 + float(np.linalg.norm(c))
    f_scale = [1.0 + float(np.linalg.norm(b.f0)) for b in blocks]

    y = np.zeros(m)
    ss = []
    xs = []
    for b, fsc in zip(blocks, f_scale):
        eye = np.eye(b.n, dtype=np.complex128)
        ss.append(max(np.sqrt(b.n), fsc) * eye)
        xs.append(max(np.sqrt(b.n), c_scale / np.sqrt(b.n)) * eye)

    mu0 = None
    pfeas0 = dfeas0 = None
    status = SolveStatus.ITERATION_LIMIT
    relgap = np.inf
    iters = 0
    gap_history: list[float] = []
    best_y = y
    best_score = np.inf
    best_relgap = np.inf
    stall = 0
    gram_factor = None

    for it in range(opts.max_iter):
        iters = it
        fy = [_hermitize(b.assemble(y)) for b in blocks]
        rp = [f - s for f, s in zip(fy, ss)]
        rd = c - sum(b.dot_all(x) for b, x in zip(blocks, xs))
        gap = sum(float(np.trace(x @ s).real) for x, s in zip(xs, ss))
        obj = float(c @ y)
        relgap = gap / (1.0 + abs(obj) + abs(obj - gap))
        pfeas = max(np.linalg.norm(r) / fsc for r, fsc in zip(rp, f_scale))
        dfeas = float(np.linalg.norm(rd)) / c_scale
        mu = gap / n_total
        gap_history.append(relgap)

        if not np.isfinite(mu) or not np.isfinite(pfeas) or not np.isfinite(dfeas):
            status = SolveStatus.NUMERICAL_TROUBLE
            break
        score = max(relgap / opts.gap_tol, pfeas / opts.feas_tol, dfeas / opts.feas_tol)
        if score < 0.9 * best_score:
            best_score, best_y, best_relgap = score, y.copy(), relgap
            stall = 0
        else:
            stall += 1
        if relgap <= opts.gap_tol and pfeas <= opts.feas_tol and dfeas <= opts.feas_tol:
            status = SolveStatus.OPTIMAL
            best_y, best_relgap = y, relgap
            break
        if stall >= 8:
            status = SolveStatus.NUMERICAL_TROUBLE
            break  # no measurable progress; report the best iterate seen
        if mu0 is None:
            mu0, pfeas0, dfeas0 = mu, pfeas, dfeas
        if pfeas > _DIVERGENCE_FACTOR * (pfeas0 + 1.0):
            status = SolveStatus.PRIMAL_INFEASIBLE
            break
        if dfeas > _DIVERGENCE_FACTOR * (dfeas0 + 1.0) or mu > _DIVERGENCE_FACTOR * mu0:
            status = SolveStatus.DUAL_INFEASIBLE
            break

        try:
            chol_x = [np.linalg.cholesky(x) for x in xs]
            chol_s = [np.linalg.cholesky(s) for s in ss]
            scalings = [_nt_scaling(x, s) for x, s in zip(xs, ss)]
        except np.linalg.LinAlgError:
            status = SolveStatus.NUMERICAL_TROUBLE
            break

        schur = np.zeros((m, m))
        for b, (w, _) in zip(blocks, scalings):
            schur += b.schur(w)
        schur = 0.5 * (schur + schur.T)

        # rhs pieces that do not depend on the centering target
        base = -rd.copy()
        wrpw = []
        for b, (w, _), r in zip(blocks, scalings, rp):
            t = _hermitize(w @ r @ w)
            wrpw.append(t)
            base -= b.dot_all(t)

        jitter = 0.0
        factor = None
        for attempt in range(4):
            try:
                reg = schur if jitter == 0 else schur + jitter * np.eye(m)
                factor = scipy.linalg.cho_factor(reg, lower=True, check_finite=False)
                break
            except scipy.linalg.LinAlgError:
                jitter = max(jitter * 100.0, 1e-12 * (1.0 + np.trace(schur) / m))
        if factor is None:
            status = SolveStatus.NUMERICAL_TROUBLE
            break

        def direction(rc_list):
            rhs = base.copy()
            for b, rc in zip(blocks, rc_list):
                rhs += b.dot_all(rc)
            dy = scipy.linalg.cho_solve(factor, rhs, check_finite=False)
            ds = [_hermitize(b.assemble(dy, include_f0=False)) + r for b, r in zip(blocks, rp)]
            dx = [
                _hermitize(rc - w @ d @ w)
                for rc, (w, _), d in zip(rc_list, scalings, ds)
            ]
            return dy, ds, dx

        # predictor: pure affine step toward complementarity zero
        rc_aff = [-x for x in xs]
        dy_a, ds_a, dx_a = direction(rc_aff)
        ap = min(min(_max_step(x, dx, ch) for x, dx, ch in zip(xs, dx_a, chol_x)), 1.0)
        ad = min(min(_max_step(s, d, ch) for s, d, ch in zip(ss, ds_a, chol_s)), 1.0)
        mu_aff = sum(
            float(np.trace((x + ap * dx) @ (s + ad * d)).real)
            for x, dx, s, d in zip(xs, dx_a, ss, ds_a)
        ) / n_total
        sigma = min(1.0, max(1e-8, (max(mu_aff, 0.0) / mu) ** 3))

        # corrector with Mehrotra second-order term (dX dS W + W dS dX)/2
        rc = [
            sigma * mu * s_inv - x - 0.5 * _hermitize(dx @ d @ w + w @ d @ dx)
            for x, (w, s_inv), dx, d in zip(xs, scalings, dx_a, ds_a)
        ]
        dy, ds, dx = direction(rc)
        tau = opts.step_frac
        ap = min(tau * min(_max_step(x, d, ch) for x, d, ch in zip(xs, dx, chol_x)), 1.0)
        ad = min(tau * min(_max_step(s, d, ch) for s, d, ch in zip(ss, ds, chol_s)), 1.0)
        if ap <= 1e-12 or ad <= 1e-12:
            status = SolveStatus.NUMERICAL_TROUBLE
            break

        y = y + ad * dy
        ss = [_hermitize(s + ad * d) for s, d in zip(ss, ds)]
        xs = [_hermitize(x + ap * d) for x, d in zip(xs, dx)]

        # ill-conditioned late-stage scaling products leak error into the
        # linear identity tr(F_i X) = c_i; project X back onto it when the
        # drift becomes visible (exact least-norm correction, kept only if
        # it preserves positivity)
        rd_now = c - sum(b.dot_all(x) for b, x in zip(blocks, xs))
        drift = float(np.linalg.norm(rd_now)) / c_scale
        if 1e-13 < drift:
            if gram_factor is None:
                gram = sum(b.gram() for b in blocks)
                gram = 0.5 * (gram + gram.T) + 1e-12 * np.trace(gram) / m * np.eye(m)
                try:
                    gram_factor = scipy.linalg.cho_factor(gram, lower=True, check_finite=False)
                except scipy.linalg.LinAlgError:
                    gram_factor = False
            if gram_factor is not False:
                wcoef = scipy.linalg.cho_solve(gram_factor, rd_now, check_finite=False)
                cand = [
                    _hermitize(x + b.assemble(wcoef, include_f0=False))
                    for b, x in zip(blocks, xs)
                ]
                try:
                    for cx in cand:
                        np.linalg.cholesky(cx)
                    xs = cand
                except np.linalg.LinAlgError:
                    pass
    else:
        iters = opts.max_iter

    y = best_y
    eigs = [float(np.linalg.eigvalsh(_hermitize(b.assemble(y)))[0]) for b in blocks]
    value = sign * float(c @ y)
    return LmiSolution(y, value, status, float(best_relgap), iters, eigs, tuple(gap_history))


def lambda_max_problem(a) -> LmiProblem:
    """min t with t*I - A >= 0; optimum is the top eigenvalue of A.

    Used as an independent oracle problem for solver soundness checks.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    return LmiProblem(
        objective=np.array([1.0]),
        blocks=[DenseBlock(-a, np.eye(n)[None, :, :])],
        sense=MINIMIZE,
    )
