import numpy as np
import pytest

from ncgraph import channels


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def random_unitary(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_channel(rng, dim_in, dim_out, num_kraus):
    """Random cptp map from a Haar-ish Stinespring isometry."""
    a = rng.standard_normal((dim_out * num_kraus, dim_in)) + 1j * rng.standard_normal(
        (dim_out * num_kraus, dim_in)
    )
    q, _ = np.linalg.qr(a)
    ops = [q[j * dim_out : (j + 1) * dim_out, :] for j in range(num_kraus)]
    return channels.make_channel(ops)
