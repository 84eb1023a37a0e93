import numpy as np
import pytest

from ncgraph import graphs, independence as ind, spaces, theta
from ncgraph.errors import NotProjectorError


def basis_vectors(d, members):
    v = np.zeros((len(members), d), dtype=complex)
    for row, m in enumerate(members):
        v[row, m] = 1.0
    return v


class TestVerify:
    def test_identity_space_accepts_any_basis(self, rng):
        s = spaces.identity_space(4)
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        ok, residual = ind.verify_independent_set(s, q.T)
        assert ok and residual <= 1e-10

    def test_complete_graph_rejects_pairs(self, rng):
        s = spaces.full_space(3)
        ok, residual = ind.verify_independent_set(s, basis_vectors(3, [0, 1]))
        assert not ok and residual >= 0.9

    def test_pentagon_adjacency(self):
        s = graphs.to_operator_space(graphs.cycle(5))
        ok, _ = ind.verify_independent_set(s, basis_vectors(5, [0, 2]))
        assert ok
        ok, residual = ind.verify_independent_set(s, basis_vectors(5, [0, 1]))
        assert not ok and residual > 0.5

    def test_non_orthonormal_rejected(self):
        s = spaces.identity_space(3)
        v = np.array([[1, 0, 0], [1 / np.sqrt(2), 1 / np.sqrt(2), 0]], dtype=complex)
        ok, _ = ind.verify_independent_set(s, v)
        assert not ok


class TestSearch:
    def test_identity_space_full_target(self):
        for d in (2, 3, 4):
            cand = ind.alpha_lower_search(
                spaces.identity_space(d), d, ind.SearchConfig(restarts=4, seed=1)
            )
            assert cand is not None and cand.size == d

    def test_pentagon_pair_found_triple_not(self):
        s = graphs.to_operator_space(graphs.cycle(5))
        assert ind.alpha_lower_search(s, 2, ind.SearchConfig(restarts=4, seed=1)) is not None
        assert ind.alpha_lower_search(s, 3, ind.SearchConfig(restarts=8, seed=1)) is None

    @staticmethod
    def _planted(d, dim, seed):
        # random directions orthogonal to span{|0><1|, |1><0|}: the pair e0, e1
        # stays independent by construction
        killed = [np.zeros((d, d), dtype=complex) for _ in range(2)]
        killed[0][0, 1] = 1.0
        killed[1][1, 0] = 1.0
        avoid = spaces.span(killed)
        mats = [np.eye(d, dtype=complex)]
        rng = np.random.default_rng(seed)
        while len(mats) < dim:
            h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            h = 0.5 * (h + h.conj().T)
            h = h - avoid.project(h)
            mats.append(0.5 * (h + h.conj().T))
        return spaces.span(mats)

    def test_planted_pair_recovery_rate(self):
        trials = 10
        for d, dim, seed in [(3, 3, 7), (4, 4, 11), (4, 4, 5)]:
            s = self._planted(d, dim, seed)
            assert spaces.is_nc_graph(s)
            ok, _ = ind.verify_independent_set(s, np.eye(d)[:2].astype(complex))
            assert ok  # the plant is real
            successes = 0
            for t in range(trials):
                cand = ind.alpha_lower_search(
                    s, 2, ind.SearchConfig(restarts=1, seed=1000 + t)
                )
                successes += cand is not None
            assert successes >= 0.9 * trials

    def test_search_output_always_verified(self):
        for seed in range(5):
            s = spaces.random_nc_graph(3, 3, seed=seed)
            cand = ind.alpha_lower_search(s, 2, ind.SearchConfig(restarts=3, seed=seed))
            if cand is not None:
                ok, _ = ind.verify_independent_set(s, cand.vectors)
                assert ok

    def test_classical_targets_reachable(self):
        cases = [graphs.cycle(5), graphs.path(6), graphs.erdos_renyi(7, 0.4, 5), graphs.erdos_renyi(8, 0.5, 9)]
        for g in cases:
            alpha, _ = graphs.alpha_brute(g)
            s = graphs.to_operator_space(g)
            cand = ind.alpha_lower_search(
                s, alpha, ind.SearchConfig(restarts=25, iters=300, seed=4)
            )
            assert cand is not None and cand.size == alpha


class TestDimensionBounds:
    def test_complete(self):
        assert ind.pair_dim_upper(spaces.full_space(3)) == 1
        assert ind.alpha_hat_upper(spaces.full_space(3)) == 1

    def test_identity_space(self):
        for d in (2, 3, 4):
            s = spaces.identity_space(d)
            assert ind.pair_dim_upper(s) == d
            assert ind.alpha_hat_upper(s) == d * d

    def test_delta(self):
        from ncgraph.suite import delta_space

        for d in (3, 4):
            s = delta_space(d)
            assert ind.pair_dim_upper(s) == 1
            assert ind.alpha_hat_upper(s) == 2

    def test_monotone_under_growth(self):
        small = spaces.random_nc_graph(3, 3, seed=2)
        big = spaces.span(list(small.basis) + [np.diag([1.0, -1.0, 0.0]).astype(complex)])
        if not spaces.space_leq(small, big):
            pytest.skip("construction degenerate")
        assert ind.pair_dim_upper(big) <= ind.pair_dim_upper(small)
        assert ind.alpha_hat_upper(big) <= ind.alpha_hat_upper(small)


class TestKnillLaflamme:
    def test_identity_space_any_projector(self, rng):
        s = spaces.identity_space(4)
        q, _ = np.linalg.qr(rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2)))
        p = q @ q.conj().T
        ok, dim = ind.verify_kl_projector(s, p)
        assert ok and dim == 2

    def test_complete_graph_no_codes(self):
        ok, _ = ind.verify_kl_projector(spaces.full_space(3), np.diag([1.0, 1.0, 0.0]))
        assert not ok

    def test_dephasing(self):
        from ncgraph.suite import dephasing_space

        s = dephasing_space()
        ok_full, _ = ind.verify_kl_projector(s, np.eye(2))
        assert not ok_full  # Z is not scalar on the whole space
        ok_rank1, dim = ind.verify_kl_projector(s, np.diag([1.0, 0.0]))
        assert ok_rank1 and dim == 1

    def test_rejects_non_projector(self):
        with pytest.raises(NotProjectorError):
            ind.verify_kl_projector(spaces.identity_space(2), np.diag([2.0, 0.0]))


class TestBounds:
    def test_pentagon_bracket(self):
        rep = ind.bounds(graphs.to_operator_space(graphs.cycle(5)))
        assert rep.alpha_lower == 2 and rep.alpha_upper == 2
        assert rep.theta_tilde_upper == pytest.approx(np.sqrt(5), abs=1e-5)
        assert rep.notes.get("classical")
        assert rep.witness is not None and rep.witness.size == 2

    def test_identity_qubit(self):
        rep = ind.bounds(spaces.identity_space(2))
        assert rep.alpha_lower == 2
        assert rep.alpha_upper == 2  # ambient and pair bound beat floor(theta)=4
        assert int(np.floor(rep.theta_tilde_upper + 1e-6)) == 4

    def test_delta_gap(self):
        from ncgraph.suite import delta_space

        rep = ind.bounds(delta_space(4))
        assert rep.pair_dim_upper == 1
        assert rep.alpha_hat_upper == 2
        assert rep.theta_tilde_upper == pytest.approx(4.0, abs=1e-4)
        assert rep.alpha_lower == rep.alpha_upper == 1

    def test_lower_never_exceeds_uppers(self):
        for seed in range(4):
            s = spaces.random_nc_graph(3, 2 + seed * 2, seed=300 + seed)
            rep = ind.bounds(s)
            assert rep.alpha_lower <= rep.alpha_upper
            assert rep.alpha_lower <= int(np.floor(rep.theta_tilde_upper + 1e-6))
            assert rep.alpha_lower <= rep.pair_dim_upper <= rep.ambient_upper
            assert rep.alpha_lower <= rep.alpha_hat_upper
