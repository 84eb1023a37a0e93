"""Operator subspaces S < L(A) and their graph-like algebra.

A space is held as an HS-orthonormal basis (a ``(k, rows, cols)`` stack).
Square spaces that contain the identity and are closed under adjoints play
the role of confusability graphs for quantum channels; the constructors here
(tensor, direct sum, complete union, induced subspace, distance powers)
mirror the classical graph operations they generalize.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotIsometryError, NotNcGraphError, ShapeMismatchError
from .linalg import RANK_TOL, as_matrix, dagger, gram_schmidt_hs, kron


@dataclass(frozen=True, eq=False)
class OperatorSpace:
    rows: int
    cols: int
    basis: np.ndarray  # (dim, rows, cols), pairwise HS-orthonormal
    adjoint_closed: bool
    contains_identity: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def ambient_dim(self) -> int:
        if not self.is_square:
            raise ShapeMismatchError("ambient_dim is only defined for square spaces")
        return self.rows

    def project(self, x: np.ndarray) -> np.ndarray:
        """Orthogonal projection of x onto the span."""
        x = as_matrix(x)
        if x.shape != (self.rows, self.cols):
            raise ShapeMismatchError(f"expected {self.rows}x{self.cols}, got {x.shape}")
        if self.dim == 0:
            return np.zeros_like(x)
        coeff = np.einsum("kij,ij->k", self.basis.conj(), x)
        return np.einsum("k,kij->ij", coeff, self.basis)

    def contains(self, x, tol: float = RANK_TOL) -> bool:
        x = as_matrix(x)
        res = np.linalg.norm(x - self.project(x))
        return res <= tol * (1.0 + np.linalg.norm(x))


def _flags(basis: np.ndarray, rows: int, cols: int) -> tuple[bool, bool]:
    k = basis.shape[0]
    if rows != cols or k == 0:
        return False, False
    # adjoint closure: every F^dagger must project back onto the span
    adj = np.conj(np.transpose(basis, (0, 2, 1)))
    coeff = np.einsum("kij,lij->kl", basis.conj(), adj)
    resid = adj - np.einsum("kl,kij->lij", coeff, basis)
    closed = bool(np.linalg.norm(resid) <= RANK_TOL * (1.0 + np.sqrt(k)))
    eye = np.eye(rows, dtype=np.complex128)
    c = np.einsum("kij,ij->k", basis.conj(), eye)
    has_id = bool(np.linalg.norm(eye - np.einsum("k,kij->ij", c, basis)) <= RANK_TOL * (1.0 + rows))
    return closed, has_id


def _make(basis_list, rows: int, cols: int) -> OperatorSpace:
    if len(basis_list) == 0:
        stack = np.zeros((0, rows, cols), dtype=np.complex128)
    else:
        stack = np.array(basis_list, dtype=np.complex128).reshape(-1, rows, cols)
    closed, has_id = _flags(stack, rows, cols)
    stack.setflags(write=False)
    return OperatorSpace(rows, cols, stack, closed, has_id)


def span(mats, tol: float = RANK_TOL) -> OperatorSpace:
    """Operator space spanned by the given matrices (dependents are dropped)."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        raise ShapeMismatchError("span requires at least one matrix to fix the ambient shape")
    rows, cols = mats[0].shape
    return _make(gram_schmidt_hs(mats, tol), rows, cols)


def identity_space(d: int) -> OperatorSpace:
    """span{1_d}: the empty non-commutative graph (a perfect channel)."""
    return _make([np.eye(d, dtype=np.complex128) / np.sqrt(d)], d, d)


def full_space(d: int) -> OperatorSpace:
    """All of L(C^d): the complete non-commutative graph."""
    basis = np.zeros((d * d, d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            basis[i * d + j, i, j] = 1.0
    return _make(basis, d, d)


def is_nc_graph(s: OperatorSpace) -> bool:
    return s.is_square and s.contains_identity and s.adjoint_closed


def require_nc_graph(s: OperatorSpace) -> None:
    if not is_nc_graph(s):
        raise NotNcGraphError(
            "operator space must contain the identity and be closed under adjoints"
        )


def orth_complement(s: OperatorSpace) -> OperatorSpace:
    """HS-orthogonal complement inside L(C^rows -> C^cols)."""
    units = np.zeros((s.rows * s.cols, s.rows, s.cols), dtype=np.complex128)
    for i in range(s.rows):
        for j in range(s.cols):
            units[i * s.cols + j, i, j] = 1.0
    out = gram_schmidt_hs(list(s.basis) + list(units))
    assert len(out) == s.rows * s.cols, "matrix units must complete any subspace basis"
    return _make(out[s.dim :], s.rows, s.cols)


def hermitian_basis(s: OperatorSpace) -> list[np.ndarray]:
    """HS-orthonormal Hermitian matrices spanning the self-adjoint part over R.

    For an adjoint-closed space the result has exactly ``dim(S)`` elements
    (the complex dimension).  When the identity lies in the space it is placed
    first, normalized, which keeps later traces of the remaining elements zero.
    """
    if not s.adjoint_closed:
        raise NotNcGraphError("hermitian_basis requires an adjoint-closed space")
    d = s.ambient_dim
    cands: list[np.ndarray] = []
    if s.contains_identity:
        cands.append(np.eye(d, dtype=np.complex128))
    for f in s.basis:
        cands.append(0.5 * (f + dagger(f)))
        cands.append(0.5j * (dagger(f) - f))
    out: list[np.ndarray] = []
    for h in cands:
        v = h.copy()
        for _ in range(2):
            for b in out:
                # coefficients are real for Hermitian pairs; .real kills roundoff
                v = v - np.vdot(b, v).real * b
        nrm = np.linalg.norm(v)
        if nrm > RANK_TOL * (1.0 + np.linalg.norm(h)):
            out.append(v / nrm)
    assert len(out) == s.dim
    return out


def tensor(s1: OperatorSpace, s2: OperatorSpace) -> OperatorSpace:
    """Tensor product space span{F (x) G}; the graph of a product channel."""
    kron(np.zeros((s1.rows, s1.cols)), np.zeros((s2.rows, s2.cols)))  # overflow guard
    if s1.dim == 0 or s2.dim == 0:
        return _make([], s1.rows * s2.rows, s1.cols * s2.cols)
    prod = np.einsum("kab,lcd->klacbd", s1.basis, s2.basis)
    stack = prod.reshape(s1.dim * s2.dim, s1.rows * s2.rows, s1.cols * s2.cols)
    return _make(stack, s1.rows * s2.rows, s1.cols * s2.cols)


def direct_sum(s1: OperatorSpace, s2: OperatorSpace) -> OperatorSpace:
    """Disjoint union: block-diagonal sum inside L(A + A')."""
    d1, d2 = s1.ambient_dim, s2.ambient_dim
    d = d1 + d2
    out = []
    for f in s1.basis:
        m = np.zeros((d, d), dtype=np.complex128)
        m[:d1, :d1] = f
        out.append(m)
    for g in s2.basis:
        m = np.zeros((d, d), dtype=np.complex128)
        m[d1:, d1:] = g
        out.append(m)
    return _make(out, d, d)


def complete_union(s1: OperatorSpace, s2: OperatorSpace) -> OperatorSpace:
    """Disjoint union plus both full off-diagonal blocks (complete bipartite join)."""
    d1, d2 = s1.ambient_dim, s2.ambient_dim
    d = d1 + d2
    base = direct_sum(s1, s2)
    out = list(base.basis)
    for i in range(d1):
        for j in range(d2):
            m = np.zeros((d, d), dtype=np.complex128)
            m[i, d1 + j] = 1.0
            out.append(m)
            m = np.zeros((d, d), dtype=np.complex128)
            m[d1 + j, i] = 1.0
            out.append(m)
    return _make(out, d, d)


def induced_subgraph(s: OperatorSpace, u, tol: float = 1e-10) -> OperatorSpace:
    """Compression U^dagger S U along an isometry U : C^d0 -> C^d."""
    u = as_matrix(u)
    d0 = u.shape[1]
    if u.shape[0] != s.ambient_dim:
        raise ShapeMismatchError(f"isometry rows {u.shape[0]} != ambient {s.ambient_dim}")
    if np.linalg.norm(dagger(u) @ u - np.eye(d0)) > tol * (1 + d0):
        raise NotIsometryError("u^dagger u != identity")
    if s.dim == 0:
        return _make([], d0, d0)
    compressed = np.einsum("ai,kab,bj->kij", u.conj(), s.basis, u)
    return _make(gram_schmidt_hs(list(compressed)), d0, d0)


def distance_graph(s: OperatorSpace, t: int) -> OperatorSpace:
    """t-fold product span S * S * ... * S (pairs at distance <= t)."""
    require_nc_graph(s)
    if t < 1:
        raise ValueError("t must be >= 1")
    cur = s
    for _ in range(t - 1):
        prods = np.einsum("kab,lbc->klac", cur.basis, s.basis)
        cur = span(prods.reshape(-1, s.ambient_dim, s.ambient_dim))
    return cur


def space_leq(s1: OperatorSpace, s2: OperatorSpace, tol: float = RANK_TOL) -> bool:
    if (s1.rows, s1.cols) != (s2.rows, s2.cols):
        raise ShapeMismatchError("spaces live in different ambient dimensions")
    return all(s2.contains(f, tol) for f in s1.basis)


def space_equal(s1: OperatorSpace, s2: OperatorSpace, tol: float = RANK_TOL) -> bool:
    return s1.dim == s2.dim and space_leq(s1, s2, tol) and space_leq(s2, s1, tol)


def random_nc_graph(d: int, dim: int, seed: int) -> OperatorSpace:
    """Random adjoint-closed space of complex dimension ``dim`` containing 1.

    Built from the identity plus dim-1 random Hermitian directions, each
    orthonormalized against the span so far; every Hermitian direction adds
    exactly one complex dimension to an adjoint-closed span.
    """
    if not 1 <= dim <= d * d:
        raise ValueError(f"dim must lie in [1, {d * d}], got {dim}")
    rng = np.random.default_rng(np.uint64(seed))
    basis = [np.eye(d, dtype=np.complex128) / np.sqrt(d)]
    while len(basis) < dim:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = 0.5 * (g + dagger(g))
        for b in basis:
            h = h - np.vdot(b, h).real * b
        nrm = np.linalg.norm(h)
        if nrm > 1e-6:
            basis.append(h / nrm)
    return _make(basis, d, d)
