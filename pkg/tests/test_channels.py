import numpy as np
import pytest

from ncgraph import channels, graphs, linalg, spaces
from ncgraph.errors import NotTracePreservingError, ShapeMismatchError

from conftest import random_channel, random_state, random_unitary

DEPHASING = [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]


class TestMakeChannel:
    def test_identity_valid(self):
        ch = channels.make_channel([np.eye(3)])
        assert ch.dim_in == ch.dim_out == 3

    def test_dephasing_valid(self):
        ch = channels.make_channel(DEPHASING)
        assert ch.num_kraus == 2

    def test_subnormalized_rejected(self):
        with pytest.raises(NotTracePreservingError):
            channels.make_channel([np.eye(2) / 2])

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            channels.make_channel([np.eye(2), np.eye(3)])


class TestApplyHeisenberg:
    def test_identity_apply(self, rng):
        ch = channels.make_channel([np.eye(2)])
        rho = random_state(rng, 2)
        assert np.allclose(channels.apply(ch, rho), rho)

    def test_dephasing_kills_coherence(self):
        ch = channels.make_channel(DEPHASING)
        rho = np.array([[0.5, 0.5], [0.5, 0.5]])
        assert np.allclose(channels.apply(ch, rho), np.diag([0.5, 0.5]))

    def test_trace_and_psd_preserved(self, rng):
        ch = random_channel(rng, 3, 4, 2)
        rho = random_state(rng, 3)
        out = channels.apply(ch, rho)
        assert np.trace(out) == pytest.approx(1.0, abs=1e-10)
        assert np.linalg.eigvalsh(0.5 * (out + out.conj().T))[0] >= -1e-10

    def test_heisenberg_unital(self, rng):
        ch = random_channel(rng, 3, 2, 3)
        assert np.linalg.norm(channels.heisenberg(ch, np.eye(2)) - np.eye(3)) <= 1e-10

    def test_adjointness(self, rng):
        ch = random_channel(rng, 2, 3, 2)
        rho = random_state(rng, 2)
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        lhs = linalg.hs_inner(x, channels.apply(ch, rho))
        rhs = linalg.hs_inner(channels.heisenberg(ch, x), rho)
        assert abs(lhs - rhs) <= 1e-11

    def test_dephasing_heisenberg_diagonal(self):
        ch = channels.make_channel(DEPHASING)
        x = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert np.allclose(channels.heisenberg(ch, x), np.diag([1.0, 4.0]))


class TestConfusability:
    def test_identity_channel(self):
        s = channels.confusability(channels.make_channel([np.eye(4)]))
        assert spaces.space_equal(s, spaces.identity_space(4))

    def test_dephasing_span(self):
        s = channels.confusability(channels.make_channel(DEPHASING))
        z = np.diag([1.0, -1.0]).astype(complex)
        assert spaces.space_equal(s, spaces.span([np.eye(2), z]))

    def test_classical_pentagon(self):
        ch = channels.from_classical(channels.channel_from_graph(graphs.cycle(5)))
        s = channels.confusability(ch)
        assert s.dim == 15
        assert spaces.orth_complement(s).dim == 10

    def test_always_nc_graph(self, rng):
        for k in (1, 2, 4):
            ch = random_channel(rng, 3, 3, k)
            assert spaces.is_nc_graph(channels.confusability(ch))

    def test_kraus_remix_invariance(self, rng):
        ch = random_channel(rng, 3, 2, 3)
        u = random_unitary(rng, 3)
        remixed = channels.make_channel(
            [sum(u[i, j] * ch.kraus[j] for j in range(3)) for i in range(3)]
        )
        assert spaces.space_equal(
            channels.confusability(ch), channels.confusability(remixed)
        )

    def test_tensor_factorizes(self, rng):
        ch1 = random_channel(rng, 2, 2, 2)
        ch2 = random_channel(rng, 2, 3, 2)
        lhs = channels.confusability(channels.tensor_channel(ch1, ch2))
        rhs = spaces.tensor(channels.confusability(ch1), channels.confusability(ch2))
        assert spaces.space_equal(lhs, rhs)


class TestComplementary:
    def test_identity_goes_constant(self):
        comp = channels.complementary(channels.make_channel([np.eye(3)]))
        assert comp.dim_out == 1

    def test_environment_image_is_confusability(self, rng):
        for seed in range(3):
            ch = random_channel(rng, 2, 2, 3)
            comp = channels.complementary(ch)
            images = []
            for j in range(comp.dim_out):
                for k in range(comp.dim_out):
                    m = np.zeros((comp.dim_out, comp.dim_out), dtype=complex)
                    m[j, k] = 1.0
                    images.append(channels.heisenberg(comp, m))
            assert spaces.space_equal(
                spaces.span(images), channels.confusability(ch)
            )

    def test_dephasing_complement(self):
        ch = channels.make_channel(DEPHASING)
        comp = channels.complementary(ch)
        z = np.diag([1.0, -1.0]).astype(complex)
        assert spaces.space_leq(
            spaces.span([np.eye(2), z]), channels.confusability(comp)
        )

    def test_complementary_is_trace_preserving(self, rng):
        ch = random_channel(rng, 3, 4, 2)
        comp = channels.complementary(ch)
        gram = np.einsum("kij,kil->jl", comp.kraus.conj(), comp.kraus)
        assert np.linalg.norm(gram - np.eye(3)) <= 1e-10


class TestBipartite:
    def test_identity(self):
        z = channels.bipartite_space(channels.make_channel([np.eye(3)]))
        assert z.dim == 1

    def test_dephasing(self):
        assert channels.bipartite_space(channels.make_channel(DEPHASING)).dim == 2

    def test_pair_products_recover_confusability(self, rng):
        ch = random_channel(rng, 3, 2, 2)
        z = channels.bipartite_space(ch)
        prods = [x.conj().T @ y for x in z.basis for y in z.basis]
        assert spaces.space_equal(spaces.span(prods), channels.confusability(ch))


class TestClassical:
    def test_permutation_channel(self):
        probs = np.eye(4)[:, [1, 2, 3, 0]]
        ch = channels.from_classical(channels.ClassicalChannel(4, 4, probs))
        assert ch.num_kraus == 4
        s = channels.confusability(ch)
        assert spaces.space_equal(s, graphs.to_operator_space(graphs.empty(4)))

    def test_binary_symmetric_half(self):
        probs = np.full((2, 2), 0.5)
        ch = channels.from_classical(channels.ClassicalChannel(2, 2, probs))
        assert spaces.space_equal(channels.confusability(ch), spaces.full_space(2))

    def test_deterministic_function(self):
        # inputs 0,1 -> output 0; input 2 -> output 1; confusable pairs share outputs
        probs = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        ch = channels.from_classical(channels.ClassicalChannel(3, 2, probs))
        s = channels.confusability(ch)
        expected = graphs.to_operator_space(graphs.from_edges(3, [(0, 1)]))
        assert spaces.space_equal(s, expected)

    def test_zero_probability_skipped(self):
        probs = np.array([[1.0, 0.5], [0.0, 0.5]])
        ch = channels.from_classical(channels.ClassicalChannel(2, 2, probs))
        assert ch.num_kraus == 3


class TestChannelFromGraph:
    def test_empty_graph_private_symbols(self):
        nc = channels.channel_from_graph(graphs.empty(4))
        assert nc.n_out == 4
        s = channels.confusability(channels.from_classical(nc))
        assert s.dim == 4

    def test_k2_single_edge(self):
        nc = channels.channel_from_graph(graphs.complete(2))
        assert nc.n_out == 1
        s = channels.confusability(channels.from_classical(nc))
        assert spaces.space_equal(s, spaces.full_space(2))

    def test_pentagon(self):
        nc = channels.channel_from_graph(graphs.cycle(5))
        assert nc.n_out == 5
        s = channels.confusability(channels.from_classical(nc))
        assert s.dim == 15

    def test_reproduces_graph_space_exhaustive(self):
        for n in range(1, 5):
            for g in graphs.nonisomorphic_graphs(n):
                s = channels.confusability(channels.from_classical(channels.channel_from_graph(g)))
                assert spaces.space_equal(s, graphs.to_operator_space(g))

    def test_reproduces_graph_space_random_larger(self):
        for seed in range(4):
            g = graphs.erdos_renyi(5 + seed % 2, 0.5, seed=60 + seed)
            s = channels.confusability(channels.from_classical(channels.channel_from_graph(g)))
            assert spaces.space_equal(s, graphs.to_operator_space(g))


class TestCompose:
    def test_identity_neutral(self, rng):
        ch = random_channel(rng, 2, 3, 2)
        composed = channels.compose(channels.make_channel([np.eye(3)]), ch)
        assert spaces.space_equal(
            channels.confusability(composed), channels.confusability(ch)
        )

    def test_trace_to_constant_completes(self, rng):
        ch = random_channel(rng, 3, 2, 2)
        constant = channels.make_channel(
            [np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])]
        )
        composed = channels.compose(constant, ch)
        assert spaces.space_equal(
            channels.confusability(composed), spaces.full_space(3)
        )

    def test_postprocessing_grows_graph(self, rng):
        for seed in range(3):
            ch = random_channel(rng, 2, 3, 2)
            post = random_channel(rng, 3, 2, 2)
            assert spaces.space_leq(
                channels.confusability(ch),
                channels.confusability(channels.compose(post, ch)),
            )

    def test_dim_mismatch(self, rng):
        ch = random_channel(rng, 2, 3, 2)
        with pytest.raises(ShapeMismatchError):
            channels.compose(ch, ch)
