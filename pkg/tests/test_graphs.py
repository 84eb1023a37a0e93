import numpy as np
import pytest

from ncgraph import graphs, spaces
from ncgraph.errors import DimensionOverflowError


class TestConstructors:
    def test_cycle(self):
        c5 = graphs.cycle(5)
        assert c5.num_edges == 5
        assert all(int(g.adjacency[i].sum()) == 2 for g in [c5] for i in range(5))

    def test_complete(self):
        assert graphs.complete(4).num_edges == 6

    def test_erdos_renyi_reproducible(self):
        a = graphs.erdos_renyi(10, 0.5, seed=1)
        b = graphs.erdos_renyi(10, 0.5, seed=1)
        c = graphs.erdos_renyi(10, 0.5, seed=2)
        assert np.array_equal(a.adjacency, b.adjacency)
        assert not np.array_equal(a.adjacency, c.adjacency)

    def test_path(self):
        assert graphs.path(4).num_edges == 3


class TestStrongProduct:
    def test_k1_neutral(self):
        g = graphs.cycle(5)
        prod = graphs.strong_product(graphs.complete(1), g)
        assert np.array_equal(prod.adjacency, g.adjacency)

    def test_k2_squared(self):
        prod = graphs.strong_product(graphs.complete(2), graphs.complete(2))
        assert np.array_equal(prod.adjacency, graphs.complete(4).adjacency)

    def test_pentagon_square_alpha(self):
        sq = graphs.strong_product(graphs.cycle(5), graphs.cycle(5))
        alpha, witness = graphs.alpha_brute(sq)
        assert alpha == 5
        # witness really is independent in the product
        for a in witness:
            for b in witness:
                if a != b:
                    assert not sq.adjacency[a, b]

    def test_alpha_supermultiplicative(self):
        for seed in range(5):
            g = graphs.erdos_renyi(4, 0.5, seed)
            h = graphs.erdos_renyi(4, 0.4, seed + 50)
            ag, _ = graphs.alpha_brute(g)
            ah, _ = graphs.alpha_brute(h)
            aprod, _ = graphs.alpha_brute(graphs.strong_product(g, h))
            assert aprod >= ag * ah


class TestAlphaBrute:
    def test_empty_and_complete(self):
        assert graphs.alpha_brute(graphs.empty(7))[0] == 7
        assert graphs.alpha_brute(graphs.complete(7))[0] == 1

    def test_pentagon(self):
        assert graphs.alpha_brute(graphs.cycle(5))[0] == 2

    def test_exhaustive_oracle_small(self):
        # brute enumeration over all vertex subsets as the oracle
        for seed in range(6):
            g = graphs.erdos_renyi(7, 0.45, seed=seed + 7)
            best = 0
            for mask in range(1 << 7):
                members = [v for v in range(7) if mask >> v & 1]
                if all(
                    not g.adjacency[a, b] for i, a in enumerate(members) for b in members[i + 1 :]
                ):
                    best = max(best, len(members))
            assert graphs.alpha_brute(g)[0] == best

    def test_relabel_invariance(self, rng):
        g = graphs.erdos_renyi(8, 0.5, seed=3)
        perm = rng.permutation(8)
        assert graphs.alpha_brute(g)[0] == graphs.alpha_brute(graphs.relabel(g, perm))[0]

    def test_witness_is_independent(self):
        g = graphs.erdos_renyi(9, 0.5, seed=11)
        alpha, witness = graphs.alpha_brute(g)
        assert len(witness) == alpha
        for i, a in enumerate(witness):
            for b in witness[i + 1 :]:
                assert not g.adjacency[a, b]

    def test_cap(self):
        with pytest.raises(DimensionOverflowError):
            graphs.alpha_brute(graphs.empty(40))


class TestComplement:
    def test_complete_to_empty(self):
        assert graphs.complement_graph(graphs.complete(5)).num_edges == 0

    def test_involution(self):
        g = graphs.erdos_renyi(6, 0.5, seed=5)
        assert np.array_equal(
            graphs.complement_graph(graphs.complement_graph(g)).adjacency, g.adjacency
        )

    def test_pentagon_self_complementary(self):
        c5 = graphs.cycle(5)
        comp = graphs.complement_graph(c5)
        assert comp.num_edges == c5.num_edges
        relabeled = graphs.relabel(comp, [0, 2, 4, 1, 3])
        assert np.array_equal(relabeled.adjacency, c5.adjacency)


class TestOperatorSpaceBridge:
    def test_empty_graph_diagonal(self):
        s = graphs.to_operator_space(graphs.empty(4))
        assert s.dim == 4
        assert spaces.is_nc_graph(s)

    def test_complete_graph_full(self):
        s = graphs.to_operator_space(graphs.complete(3))
        assert spaces.space_equal(s, spaces.full_space(3))

    def test_pentagon_dim(self):
        assert graphs.to_operator_space(graphs.cycle(5)).dim == 5 + 2 * 5

    def test_complement_pattern(self):
        g = graphs.cycle(5)
        s = graphs.to_operator_space(g)
        perp = spaces.orth_complement(s)
        for i in range(5):
            for j in range(5):
                if i != j and not g.adjacency[i, j]:
                    m = np.zeros((5, 5), dtype=complex)
                    m[i, j] = 1.0
                    assert perp.contains(m)

    def test_strong_product_matches_tensor(self):
        pairs = [
            (graphs.path(3), graphs.complete(2)),
            (graphs.cycle(4), graphs.empty(2)),
            (graphs.erdos_renyi(4, 0.5, 1), graphs.erdos_renyi(3, 0.5, 2)),
            (graphs.erdos_renyi(4, 0.6, 3), graphs.erdos_renyi(4, 0.3, 4)),
        ]
        for g, h in pairs:
            lhs = graphs.to_operator_space(graphs.strong_product(g, h))
            rhs = spaces.tensor(graphs.to_operator_space(g), graphs.to_operator_space(h))
            assert spaces.space_equal(lhs, rhs)

    def test_disjoint_union_matches_direct_sum(self):
        g = graphs.cycle(4)
        h = graphs.path(3)
        lhs = graphs.to_operator_space(graphs.disjoint_union(g, h))
        rhs = spaces.direct_sum(graphs.to_operator_space(g), graphs.to_operator_space(h))
        assert spaces.space_equal(lhs, rhs)

    def test_join_matches_complete_union(self):
        g = graphs.path(2)
        h = graphs.empty(2)
        lhs = graphs.to_operator_space(graphs.join(g, h))
        rhs = spaces.complete_union(graphs.to_operator_space(g), graphs.to_operator_space(h))
        assert spaces.space_equal(lhs, rhs)


class TestEnumeration:
    def test_counts(self):
        expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
        for n, count in expected.items():
            assert len(graphs.nonisomorphic_graphs(n)) == count

    def test_no_isomorphic_duplicates_small(self):
        import itertools

        gs = graphs.nonisomorphic_graphs(4)
        for a, b in itertools.combinations(gs, 2):
            same = False
            for perm in itertools.permutations(range(4)):
                if np.array_equal(graphs.relabel(a, list(perm)).adjacency, b.adjacency):
                    same = True
                    break
            assert not same
