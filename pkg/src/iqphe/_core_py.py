"""Numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension
(``iqphe._core``) is not available. Both backends expose the same three
functions and must agree to float precision; ``tests/test_backend.py``
checks the parity.

Kernels:

* ``eigvalsh``   -- eigenvalues of a complex Hermitian matrix by cyclic
                    Jacobi rotations (no LAPACK).
* ``conj_diag``  -- rho -> D rho D* for a diagonal unitary D.
* ``conj_pauli`` -- rho -> P rho P* for P = i^c Z^u X^v given as bitmasks
                    (the phase cancels under conjugation).
"""

import numpy as np

BACKEND = "python"

# Off-diagonal Frobenius mass below which the Jacobi iteration stops. The
# eigenvalue error is bounded by this mass, comfortably below the 1e-12
# tolerances used throughout.
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def eigvalsh(a):
    """Eigenvalues of a complex Hermitian matrix, ascending.

    Cyclic-by-row Jacobi: each sweep annihilates every off-diagonal entry
    once with a complex plane rotation; quadratic convergence kicks in
    after the first sweeps. Input is not modified.
    """
    a = np.array(a, dtype=np.complex128)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if m == 1:
        return np.array([a[0, 0].real])

    for _ in range(JACOBI_MAX_SWEEPS):
        # Squared off-diagonal Frobenius mass, summed directly over the
        # off-diagonal entries (a whole-matrix subtraction would leave a
        # cancellation floor above the threshold).
        off2 = float(np.sum(np.abs(a - np.diag(np.diagonal(a))) ** 2))
        if off2 < JACOBI_TOL**2:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                r = abs(apq)
                if r <= JACOBI_TOL / (m * m):
                    continue
                # Phase removal diag(1, e^{-i beta}) followed by a real
                # rotation zeroing the (p,q) entry of the 2x2 block.
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                # Columns p,q: A <- A U with U the plane rotation.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - np.conj(sp) * col_q
                a[:, q] = sp * col_p + c * col_q
                # Rows p,q: A <- U^dagger A.
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = np.conj(sp) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")

    vals = np.sort(a.diagonal().real)
    return vals


def conj_diag(rho, d):
    """Conjugate ``rho`` by the diagonal unitary with diagonal ``d``."""
    d = np.asarray(d, dtype=np.complex128)
    return (d[:, None] * np.asarray(rho, dtype=np.complex128)) * np.conj(d)[None, :]


def _parity_of(masked):
    # Vectorized popcount parity for values < 2^16 (dimension cap 2^10).
    t = masked.astype(np.int64)
    t ^= t >> 8
    t ^= t >> 4
    t ^= t >> 2
    t ^= t >> 1
    return (t & 1).astype(np.int64)


def conj_pauli(rho, u_mask, v_mask):
    """Conjugate ``rho`` by Z^u X^v (bitmask form, qubit 0 = highest bit).

    (P rho P*)[a, b] = (-1)^{u.a + u.b} rho[a ^ v, b ^ v]; the i^c phase
    cancels, so only the masks matter.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    dim = rho.shape[0]
    idx = np.arange(dim)
    sign = 1.0 - 2.0 * _parity_of(idx & u_mask)
    perm = idx ^ v_mask
    out = rho[np.ix_(perm, perm)] * (sign[:, None] * sign[None, :])
    return out
