"""Quantum channels in Kraus form and their confusability structure."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotTracePreservingError, ShapeMismatchError
from . import spaces
from .graphs import Graph
from .linalg import as_matrix, dagger
from .spaces import OperatorSpace


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    dim_in: int
    dim_out: int
    kraus: np.ndarray  # (k, dim_out, dim_in)

    @property
    def num_kraus(self) -> int:
        return self.kraus.shape[0]


@dataclass(frozen=True, eq=False)
class ClassicalChannel:
    n_in: int
    n_out: int
    probs: np.ndarray  # (n_out, n_in), column-stochastic

    def __post_init__(self):
        p = self.probs
        if p.shape != (self.n_out, self.n_in):
            raise ShapeMismatchError("transition matrix shape mismatch")
        if np.any(p < 0) or np.any(np.abs(p.sum(axis=0) - 1.0) > 1e-12):
            raise NotTracePreservingError(float(np.max(np.abs(p.sum(axis=0) - 1.0))))


def make_channel(kraus, tol: float = 1e-9) -> QuantumChannel:
    """Validate a Kraus family: consistent shapes and sum E^dag E = identity."""
    ops = [as_matrix(e) for e in kraus]
    if not ops:
        raise ShapeMismatchError("need at least one Kraus operator")
    dim_out, dim_in = ops[0].shape
    for e in ops:
        if e.shape != (dim_out, dim_in):
            raise ShapeMismatchError(f"inconsistent Kraus shapes {e.shape} vs {(dim_out, dim_in)}")
    stack = np.array(ops)
    gram = np.einsum("kij,kil->jl", stack.conj(), stack)
    residual = float(np.linalg.norm(gram - np.eye(dim_in)))
    if residual > tol * dim_in:
        raise NotTracePreservingError(residual)
    stack.setflags(write=False)
    return QuantumChannel(dim_in, dim_out, stack)


def apply(ch: QuantumChannel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise ShapeMismatchError(f"state must be {ch.dim_in}x{ch.dim_in}")
    return np.einsum("kij,jl,kml->im", ch.kraus, rho, ch.kraus.conj())


def heisenberg(ch: QuantumChannel, x) -> np.ndarray:
    """Adjoint (observable) picture: sum E^dag X E; unital."""
    x = as_matrix(x)
    if x.shape != (ch.dim_out, ch.dim_out):
        raise ShapeMismatchError(f"observable must be {ch.dim_out}x{ch.dim_out}")
    return np.einsum("kji,jl,klm->im", ch.kraus.conj(), x, ch.kraus)


def confusability(ch: QuantumChannel) -> OperatorSpace:
    """span{E_j^dag E_k}: the non-commutative confusability graph of the channel.

    Invariant under the choice of Kraus representation, and always an
    operator space containing the identity and closed under adjoints.
    """
    prods = np.einsum("jab,kac->jkbc", ch.kraus.conj(), ch.kraus)
    return spaces.span(prods.reshape(-1, ch.dim_in, ch.dim_in))


def bipartite_space(ch: QuantumChannel) -> OperatorSpace:
    """span{E_j} < L(A -> B); its pairwise products X^dag Y recover confusability."""
    return spaces.span(list(ch.kraus))


def complementary(ch: QuantumChannel) -> QuantumChannel:
    """Channel into the environment of the Stinespring dilation.

    With V|phi> = sum_j (E_j|phi>) (x) |j>, the complementary Kraus operators
    are F_b = (<b| (x) 1) V, one per output basis vector b.  The span of its
    Heisenberg images over all environment observables equals confusability.
    """
    k = ch.num_kraus
    ops = [ch.kraus[:, b, :].reshape(k, ch.dim_in) for b in range(ch.dim_out)]
    return make_channel(ops)


def compose(post: QuantumChannel, ch: QuantumChannel) -> QuantumChannel:
    if post.dim_in != ch.dim_out:
        raise ShapeMismatchError("inner dimensions do not match")
    prods = np.einsum("rab,kbc->rkac", post.kraus, ch.kraus)
    return make_channel(prods.reshape(-1, post.dim_out, ch.dim_in))


def tensor_channel(ch1: QuantumChannel, ch2: QuantumChannel) -> QuantumChannel:
    ops = [np.kron(e1, e2) for e1 in ch1.kraus for e2 in ch2.kraus]
    return make_channel(ops)


def from_classical(nc: ClassicalChannel) -> QuantumChannel:
    """Embed a classical channel as the cptp map with Kraus sqrt(N(y|x))|y><x|.

    Transitions with zero probability contribute no Kraus operator.
    """
    ops = []
    for y in range(nc.n_out):
        for x in range(nc.n_in):
            p = nc.probs[y, x]
            if p > 0:
                m = np.zeros((nc.n_out, nc.n_in), dtype=np.complex128)
                m[y, x] = np.sqrt(p)
                ops.append(m)
    return make_channel(ops)


def channel_from_graph(g: Graph) -> ClassicalChannel:
    """A classical channel whose confusability graph is exactly g.

    Each input is sent uniformly to one of its incident edges; isolated
    vertices get a private output symbol so they stay unconfusable.
    """
    edges = g.edges
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for e, (i, j) in enumerate(edges):
        incident[i].append(e)
        incident[j].append(e)
    isolated = [v for v in range(g.n) if not incident[v]]
    n_out = len(edges) + len(isolated)
    probs = np.zeros((n_out, g.n))
    for v in range(g.n):
        if incident[v]:
            for e in incident[v]:
                probs[e, v] = 1.0 / len(incident[v])
        else:
            probs[len(edges) + isolated.index(v), v] = 1.0
    return ClassicalChannel(g.n, n_out, probs)
