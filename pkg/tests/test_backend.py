"""Kernel backends: correctness against LAPACK and parity with each other."""

import numpy as np
import pytest

from iqphe import _core_py, backend
from conftest import random_hermitian

try:
    from iqphe import _core
except ImportError:
    _core = None

BACKENDS = [_core_py] if _core is None else [_core_py, _core]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@pytest.mark.parametrize("dim", [1, 2, 3, 4, 8, 16, 37, 64])
def test_eigvalsh_matches_lapack(impl, dim, rng):
    h = random_hermitian(rng, dim)
    got = impl.eigvalsh(h)
    want = np.linalg.eigvalsh(h)
    assert np.max(np.abs(got - want)) < 1e-11 * max(1.0, np.abs(want).max())


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_eigvalsh_near_diagonal_and_zero(impl):
    assert np.allclose(impl.eigvalsh(np.zeros((5, 5), dtype=complex)), 0.0)
    d = np.diag([3.0, -1.0, 2.0]).astype(complex)
    assert np.allclose(impl.eigvalsh(d), [-1.0, 2.0, 3.0])


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_eigvalsh_input_untouched(impl, rng):
    h = random_hermitian(rng, 6)
    before = h.copy()
    impl.eigvalsh(h)
    assert np.array_equal(h, before)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_eigvalsh_rejects_non_square(impl):
    with pytest.raises(ValueError):
        impl.eigvalsh(np.zeros((2, 3), dtype=complex))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_conj_diag_matches_dense(impl, rng):
    for dim in (2, 4, 8):
        m = random_hermitian(rng, dim)
        d = np.exp(1j * rng.normal(size=dim))
        u = np.diag(d)
        assert np.allclose(impl.conj_diag(m, d), u @ m @ u.conj().T, atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_conj_pauli_matches_dense(impl, rng):
    from conftest import zuxv_matrix

    n = 2
    m = random_hermitian(rng, 1 << n)
    for u_mask in range(1 << n):
        for v_mask in range(1 << n):
            u = tuple((u_mask >> (n - 1 - j)) & 1 for j in range(n))
            v = tuple((v_mask >> (n - 1 - j)) & 1 for j in range(n))
            p = zuxv_matrix(u, v)
            assert np.allclose(
                impl.conj_pauli(m, u_mask, v_mask), p @ m @ p.conj().T, atol=1e-13
            )


@pytest.mark.skipif(_core is None, reason="compiled extension not built")
def test_backend_parity(rng):
    for dim in (3, 8, 16):
        h = random_hermitian(rng, dim)
        assert np.max(np.abs(_core.eigvalsh(h) - _core_py.eigvalsh(h))) < 1e-12
        d = np.exp(1j * rng.normal(size=dim))
        assert np.allclose(_core.conj_diag(h, d), _core_py.conj_diag(h, d))
    m = random_hermitian(rng, 8)
    for u, v in [(0, 0), (5, 2), (7, 7), (1, 6)]:
        assert np.allclose(_core.conj_pauli(m, u, v), _core_py.conj_pauli(m, u, v))


def test_selected_backend_exposed():
    assert backend.BACKEND in ("python", "compiled")


def test_read_only_input_accepted(rng):
    h = random_hermitian(rng, 4)
    h.setflags(write=False)
    d = np.exp(1j * rng.normal(size=4))
    for impl in BACKENDS:
        impl.eigvalsh(h)
        impl.conj_diag(h, d)
        impl.conj_pauli(h, 1, 2)
