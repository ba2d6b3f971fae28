"""Convenience constructors for density matrices used in tests and the CLI."""

from __future__ import annotations

import numpy as np

from .hashing import as_rng
from .sim import DensityMatrix


def from_state_vector(psi) -> DensityMatrix:
    psi = np.asarray(psi, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def basis_state(bits) -> DensityMatrix:
    """|b_0 b_1 ...><...| in the computational basis."""
    bits = tuple(int(b) for b in bits)
    n = len(bits)
    index = 0
    for b in bits:
        index = (index << 1) | b
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[index] = 1.0
    return from_state_vector(psi)


def plus_state(n=1) -> DensityMatrix:
    """|+>^n, the circuit-model input state."""
    dim = 1 << n
    return DensityMatrix(np.full((dim, dim), 1.0 / dim, dtype=np.complex128))


def maximally_mixed(n=1) -> DensityMatrix:
    return DensityMatrix(np.eye(1 << n, dtype=np.complex128) / (1 << n))


def xy_pure(theta) -> DensityMatrix:
    """(|0> + e^{i theta} |1>)/sqrt(2): a pure equator state."""
    return from_state_vector([1.0, np.exp(1j * theta)])


def xy_mixed(theta, radius) -> DensityMatrix:
    """Single-qubit state with Bloch vector (radius cos t, radius sin t, 0)."""
    if not 0 <= radius <= 1:
        raise ValueError("Bloch radius must lie in [0, 1]")
    rx, ry = radius * np.cos(theta), radius * np.sin(theta)
    return DensityMatrix(
        np.array([[0.5, 0.5 * (rx - 1j * ry)], [0.5 * (rx + 1j * ry), 0.5]])
    )


def product_state(factors) -> DensityMatrix:
    data = np.array([[1.0 + 0.0j]])
    for f in factors:
        data = np.kron(data, f.data)
    return DensityMatrix(data)


def random_xy_product(n, rng, allow_mixed=True) -> DensityMatrix:
    """Product of random equator-plane single-qubit states."""
    rng = as_rng(rng)
    factors = []
    for _ in range(n):
        theta = rng.uniform(0, 2 * np.pi)
        radius = rng.uniform(0, 1) if allow_mixed and rng.random() < 0.5 else 1.0
        factors.append(xy_mixed(theta, radius))
    return product_state(factors)


def random_xy_state(n, rng, terms=3) -> DensityMatrix:
    """Random mixture of equator-plane products; correlated but still Z-free."""
    rng = as_rng(rng)
    weights = rng.dirichlet(np.ones(terms))
    data = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for w in weights:
        data += w * random_xy_product(n, rng).data
    return DensityMatrix(data)


def random_density(n, rng) -> DensityMatrix:
    """Unconstrained random density matrix (Ginibre construction)."""
    rng = as_rng(rng)
    dim = 1 << n
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m))


def random_single_qubit(rng) -> DensityMatrix:
    """Random single-qubit state, uniform direction, random radius."""
    rng = as_rng(rng)
    vec = rng.normal(size=3)
    vec = vec / np.linalg.norm(vec) * rng.uniform(0, 1)
    r1, r2, r3 = vec
    return DensityMatrix(
        np.array(
            [
                [0.5 * (1 + r3), 0.5 * (r1 - 1j * r2)],
                [0.5 * (r1 + 1j * r2), 0.5 * (1 - r3)],
            ]
        )
    )
