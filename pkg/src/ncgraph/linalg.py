"""Dense complex linear algebra primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` objects with ``complex128`` dtype; this
module provides the handful of operations (Kronecker products, partial traces,
Hilbert-Schmidt geometry, Hermitian eigendecompositions) that the operator
space and optimization layers are built on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionOverflowError,
    NotHermitianError,
    ShapeMismatchError,
)

# Largest ambient matrix dimension any construction is allowed to produce.
MAX_AMBIENT_DIM = 4096

# Single knob for "numerically zero" in rank/containment decisions.
RANK_TOL = 1e-9

HERM_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-d complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ShapeMismatchError("matrix contains NaN or Inf entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m.T)


def kron(a, b) -> np.ndarray:
    """Kronecker product with an ambient-dimension guard."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] * b.shape[0] > MAX_AMBIENT_DIM or a.shape[1] * b.shape[1] > MAX_AMBIENT_DIM:
        raise DimensionOverflowError(
            f"kron result {a.shape[0] * b.shape[0]}x{a.shape[1] * b.shape[1]} "
            f"exceeds the {MAX_AMBIENT_DIM} ambient-dimension cap"
        )
    return np.kron(a, b)


def partial_trace(m, dim_a: int, dim_b: int, trace_out: str = "A") -> np.ndarray:
    """Trace out one tensor factor of an operator on A (x) B.

    ``trace_out`` selects the factor that is contracted away: ``"A"`` returns
    an operator on B, ``"B"`` one on A.  The trace of the output equals the
    trace of the input.
    """
    m = as_matrix(m)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ShapeMismatchError(f"expected {n}x{n} matrix for dims {dim_a}x{dim_b}, got {m.shape}")
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if trace_out == "A":
        return np.trace(t, axis1=0, axis2=2)
    if trace_out == "B":
        return np.trace(t, axis1=1, axis2=3)
    raise ValueError(f"trace_out must be 'A' or 'B', got {trace_out!r}")


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt inner product tr(x^dagger y), conjugate linear in x."""
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape != y.shape:
        raise ShapeMismatchError(f"shape mismatch {x.shape} vs {y.shape}")
    return complex(np.vdot(x, y))


def hs_norm(x) -> float:
    return float(np.linalg.norm(np.asarray(x)))


@dataclass(frozen=True)
class EigDecomposition:
    """Spectral decomposition H = V diag(w) V^dagger with ascending eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def _hermitian_part(h: np.ndarray, tol: float = HERM_TOL) -> np.ndarray:
    """Symmetrize, failing hard when the asymmetry is beyond roundoff."""
    asym = np.linalg.norm(h - dagger(h))
    if asym > tol * (1.0 + np.linalg.norm(h)):
        raise NotHermitianError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    return 0.5 * (h + dagger(h))


def eigh(h, tol: float = HERM_TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    h = _hermitian_part(as_matrix(h), tol)
    w, v = np.linalg.eigh(h)
    return EigDecomposition(eigenvalues=w, eigenvectors=v)


def operator_norm(m) -> float:
    """Largest singular value."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def max_entangled(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized maximally entangled vector sum_i |i>|i> and its outer product.

    The returned matrix has trace d and rank one; tracing out either factor
    yields the identity on the other.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    vec = np.zeros(d * d, dtype=np.complex128)
    vec[:: d + 1] = 1.0
    return vec, np.outer(vec, vec.conj())


def real_embed(h) -> np.ndarray:
    """Embed a Hermitian n x n matrix as the real symmetric [[Re,-Im],[Im,Re]].

    The embedding is a *-homomorphism, so the output is PSD iff the input is,
    and every eigenvalue of the input appears twice.
    """
    h = _hermitian_part(as_matrix(h))
    re, im = h.real, h.imag
    return np.block([[re, -im], [im, re]])


def gram_schmidt_hs(mats, tol: float = RANK_TOL) -> list[np.ndarray]:
    """HS-orthonormalize a list of equal-shape matrices, dropping dependents.

    Modified Gram-Schmidt with one reorthogonalization pass; a vector whose
    residual norm falls below ``tol * (1 + input norm)`` is discarded, so the
    output length equals the numerical rank of the input span.
    """
    basis: list[np.ndarray] = []
    shape = None
    for m in mats:
        m = as_matrix(m)
        if shape is None:
            shape = m.shape
        elif m.shape != shape:
            raise ShapeMismatchError(f"mixed shapes {shape} vs {m.shape}")
        scale = 1.0 + np.linalg.norm(m)
        v = m
        for _ in range(2):  # second pass restores orthogonality lost to cancellation
            for b in basis:
                v = v - np.vdot(b, v) * b
        nrm = np.linalg.norm(v)
        if nrm > tol * scale:
            basis.append(v / nrm)
    return basis
