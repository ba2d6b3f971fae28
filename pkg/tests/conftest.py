"""Shared fixtures and independent dense-matrix oracles.

The oracles here deliberately avoid the package's index-arithmetic fast
paths: operators are embedded by explicit basis-element bookkeeping and
Kronecker products, eigenvalues come from numpy's LAPACK wrapper. Tests
compare the package against these.
"""

import numpy as np
import pytest

I2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
LETTER = {"I": I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


def kron_all(mats):
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def letters_matrix(label):
    """Tensor product of I/X/Y/Z letters, qubit 0 first."""
    return kron_all([LETTER[ch] for ch in label])


def zuxv_matrix(u, v, c=0):
    """i^c Z^u X^v via explicit per-qubit matrix powers."""
    factors = []
    for a, b in zip(u, v):
        factors.append(np.linalg.matrix_power(PAULI_Z, a) @ np.linalg.matrix_power(PAULI_X, b))
    return (1j**c) * kron_all(factors)


def embed(op, support, n):
    """Extend an operator on ``support`` by identity, by index bookkeeping."""
    k = len(support)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    rest = [q for q in range(n) if q not in support]
    for a in range(dim):
        abits = [(a >> (n - 1 - j)) & 1 for j in range(n)]
        for b in range(dim):
            bbits = [(b >> (n - 1 - j)) & 1 for j in range(n)]
            if any(abits[q] != bbits[q] for q in rest):
                continue
            la = int("".join(str(abits[q]) for q in support) or "0", 2)
            lb = int("".join(str(bbits[q]) for q in support) or "0", 2)
            out[a, b] = op[la, lb]
    return out


def x_projector(n, qubit, bit):
    """(I + (-1)^bit X_qubit)/2 embedded on n qubits."""
    local = (I2 + (1 - 2 * bit) * PAULI_X) / 2
    return embed(local, (qubit,), n)


def ref_trace_distance(a, b):
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
