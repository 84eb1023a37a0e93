"""Finite simple graphs: products, independence numbers, operator-space lift."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionOverflowError, ShapeMismatchError
from . import spaces
from .spaces import OperatorSpace

MAX_VERTICES = 4096
ALPHA_CAP = 30  # branch-and-bound is exact but exponential; keep instances sane


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: np.ndarray  # (n, n) bool, symmetric, False diagonal

    def __post_init__(self):
        a = self.adjacency
        if a.shape != (self.n, self.n):
            raise ShapeMismatchError("adjacency shape does not match vertex count")
        if not np.array_equal(a, a.T) or np.any(np.diag(a)):
            raise ShapeMismatchError("adjacency must be symmetric with empty diagonal")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i, j]]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2


def from_edges(n: int, edges) -> Graph:
    a = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        if i == j:
            raise ShapeMismatchError("self-loops are not allowed")
        a[i, j] = a[j, i] = True
    return Graph(n, a)


def empty(n: int) -> Graph:
    return Graph(n, np.zeros((n, n), dtype=bool))


def complete(n: int) -> Graph:
    a = np.ones((n, n), dtype=bool)
    np.fill_diagonal(a, False)
    return Graph(n, a)


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)]) if n >= 3 else path(n)


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(np.uint64(seed))
    upper = rng.random((n, n)) < p
    a = np.triu(upper, 1)
    return Graph(n, a | a.T)


def complement_graph(g: Graph) -> Graph:
    a = ~g.adjacency
    np.fill_diagonal(a, False)
    return Graph(g.n, a)


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product: pairs adjacent iff each coordinate is adjacent-or-equal.

    Vertex (i, j) maps to index i * h.n + j, matching Kronecker ordering.
    """
    if g.n * h.n > MAX_VERTICES:
        raise DimensionOverflowError(f"product on {g.n * h.n} vertices exceeds cap")
    ag = g.adjacency | np.eye(g.n, dtype=bool)
    ah = h.adjacency | np.eye(h.n, dtype=bool)
    a = np.kron(ag, ah)
    np.fill_diagonal(a, False)
    return Graph(g.n * h.n, a)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    a = np.zeros((n, n), dtype=bool)
    a[: g.n, : g.n] = g.adjacency
    a[g.n :, g.n :] = h.adjacency
    return Graph(n, a)


def join(g: Graph, h: Graph) -> Graph:
    """Complete union: disjoint union plus all edges across the two parts."""
    u = disjoint_union(g, h)
    a = u.adjacency.copy()
    a[: g.n, g.n :] = True
    a[g.n :, : g.n] = True
    return Graph(u.n, a)


def relabel(g: Graph, perm) -> Graph:
    p = np.asarray(perm)
    return Graph(g.n, g.adjacency[np.ix_(p, p)])


def alpha_brute(g: Graph, cap: int = ALPHA_CAP) -> tuple[int, list[int]]:
    """Exact independence number with a witness set.

    Branch and bound on the complement's cliques with a greedy coloring
    bound (bitmask vertex sets), exact for any graph within the size cap.
    """
    if g.n > min(cap, 64):
        raise DimensionOverflowError(f"alpha_brute capped at {min(cap, 64)} vertices")
    comp = complement_graph(g)
    neigh = [0] * g.n
    for i in range(g.n):
        mask = 0
        for j in range(g.n):
            if comp.adjacency[i, j]:
                mask |= 1 << j
        neigh[i] = mask

    best: list[int] = []

    def color_order(p: int) -> list[tuple[int, int]]:
        # greedy coloring of candidate set; color index bounds the clique size
        order: list[tuple[int, int]] = []
        color = 0
        while p:
            color += 1
            avail = p
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                p &= ~(1 << v)
                avail &= ~(1 << v) & ~neigh[v]
        return order

    def expand(current: list[int], p: int):
        nonlocal best
        if not p:
            if len(current) > len(best):
                best = current.copy()
            return
        for v, c in reversed(color_order(p)):
            if len(current) + c <= len(best):
                return
            current.append(v)
            expand(current, p & neigh[v])
            current.pop()
            p &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return len(best), sorted(best)


def to_operator_space(g: Graph) -> OperatorSpace:
    """Confusability space span{|x><x'| : x = x' or x ~ x'} of the graph."""
    n = g.n
    mats = []
    for i in range(n):
        m = np.zeros((n, n), dtype=np.complex128)
        m[i, i] = 1.0
        mats.append(m)
    for i, j in g.edges:
        for a, b in ((i, j), (j, i)):
            m = np.zeros((n, n), dtype=np.complex128)
            m[a, b] = 1.0
            mats.append(m)
    return spaces._make(mats, n, n)  # matrix units: already HS-orthonormal


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """All simple graphs on n vertices up to isomorphism (n <= 7).

    Canonical form = minimum edge bitmask over all vertex permutations,
    computed vectorized over the 2^(n choose 2) masks at once.
    """
    if n < 1 or n > 7:
        raise DimensionOverflowError("exhaustive enumeration supported for 1 <= n <= 7")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    ne = len(pairs)
    idx = {p: k for k, p in enumerate(pairs)}
    masks = np.arange(1 << ne, dtype=np.int64)
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        permuted = np.zeros_like(masks)
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            dst = idx[(a, b) if a < b else (b, a)]
            permuted |= ((masks >> k) & 1) << dst
        np.minimum(canon, permuted, out=canon)
    reps = np.unique(canon)
    out = []
    for mask in reps:
        edges = [pairs[k] for k in range(ne) if (int(mask) >> k) & 1]
        out.append(from_edges(n, edges))
    return tuple(out)
