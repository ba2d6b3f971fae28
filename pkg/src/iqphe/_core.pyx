# cython: language_level=3
"""Compiled implementations of the hot kernels.

Mirror of ``iqphe._core_py``: same functions, same semantics, same
tolerances; only the inner loops are C. Keep the two files in sync.
"""

import numpy as np

from libc.math cimport sqrt

BACKEND = "compiled"

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def eigvalsh(a):
    """Eigenvalues of a complex Hermitian matrix, ascending (cyclic Jacobi)."""
    work = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t m = work.shape[0]
    if work.ndim != 2 or work.shape[1] != m:
        raise ValueError(f"expected a square matrix, got shape {work.shape}")
    if m == 1:
        return np.array([work[0, 0].real])

    cdef double complex[:, ::1] A = work
    cdef Py_ssize_t sweep, p, q, i
    cdef double off, r, tau, t, c, s, re, im
    cdef double complex apq, phase, sp, spc, tp, tq
    cdef double small = JACOBI_TOL / (m * m)
    cdef bint converged = False

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(m):
            for q in range(m):
                if p != q:
                    re = A[p, q].real
                    im = A[p, q].imag
                    off += re * re + im * im
        if sqrt(off) < JACOBI_TOL:
            converged = True
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                r = abs(apq)
                if r <= small:
                    continue
                phase = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                for i in range(m):
                    tp = A[i, p]
                    tq = A[i, q]
                    A[i, p] = c * tp - spc * tq
                    A[i, q] = sp * tp + c * tq
                for i in range(m):
                    tp = A[p, i]
                    tq = A[q, i]
                    A[p, i] = c * tp - sp * tq
                    A[q, i] = spc * tp + c * tq
                A[p, q] = 0.0
                A[q, p] = 0.0
    if not converged:
        raise RuntimeError("Jacobi eigensolver did not converge")

    return np.sort(np.diagonal(work).real)


def conj_diag(rho, d):
    """Conjugate ``rho`` by the diagonal unitary with diagonal ``d``."""
    rho_arr = np.ascontiguousarray(rho, dtype=np.complex128)
    d_arr = np.ascontiguousarray(d, dtype=np.complex128)
    cdef Py_ssize_t dim = rho_arr.shape[0]
    if d_arr.shape[0] != dim or rho_arr.shape[1] != dim:
        raise ValueError("shape mismatch")
    out_arr = np.empty((dim, dim), dtype=np.complex128)
    cdef const double complex[:, ::1] src = rho_arr
    cdef double complex[:, ::1] out = out_arr
    cdef const double complex[::1] dv = d_arr
    cdef Py_ssize_t i, j
    cdef double complex di
    for i in range(dim):
        di = dv[i]
        for j in range(dim):
            out[i, j] = di * src[i, j] * dv[j].conjugate()
    return out_arr


def conj_pauli(rho, u_mask, v_mask):
    """Conjugate ``rho`` by Z^u X^v given as index bitmasks."""
    rho_arr = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef Py_ssize_t dim = rho_arr.shape[0]
    if rho_arr.shape[1] != dim:
        raise ValueError("shape mismatch")
    out_arr = np.empty((dim, dim), dtype=np.complex128)
    cdef const double complex[:, ::1] src = rho_arr
    cdef double complex[:, ::1] out = out_arr
    cdef long u = u_mask
    cdef long v = v_mask
    cdef Py_ssize_t i, j
    cdef long t
    sign_arr = np.empty(dim, dtype=np.float64)
    cdef double[::1] sign = sign_arr
    for i in range(dim):
        t = i & u
        t ^= t >> 8
        t ^= t >> 4
        t ^= t >> 2
        t ^= t >> 1
        sign[i] = -1.0 if (t & 1) else 1.0
    for i in range(dim):
        for j in range(dim):
            out[i, j] = sign[i] * sign[j] * src[i ^ v, j ^ v]
    return out_arr
