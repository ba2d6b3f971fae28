"""Phase-tracked n-qubit Pauli operators in binary symplectic form.

An operator is stored as ``i^c * Z^u X^v`` where ``u`` and ``v`` are length-n
bit vectors and the tensor factor on qubit j is ``Z^{u_j} X^{v_j}`` (Z applied
after X). Qubit 0 owns the most significant bit of a computational-basis
index. In this convention the Hermitian single-qubit letters are

    I = (u=0, v=0, c=0)      X = (u=0, v=1, c=0)
    Z = (u=1, v=0, c=0)      Y = (u=1, v=1, c=3)   since Y = i X Z = -i Z X.

The module also provides Pauli decomposition of density matrices, the
bare-Z-freeness test used to delimit the protected input space, and Bloch
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .backend import conj_pauli

# Single-qubit constants, used by matrix construction and test oracles alike.
ID2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Hard cap on dense operations; 2^10 x 2^10 matrices stay cheap.
MAX_QUBITS = 10

# Coefficients with modulus at or below this are treated as exact zeros when
# scanning decompositions (inputs are exact constructions plus float noise).
COEFF_TOL = 1e-10

_LETTERS = {"I": (0, 0), "X": (0, 1), "Z": (1, 0), "Y": (1, 1)}


def _bits(value, n) -> tuple[int, ...]:
    return tuple((value >> (n - 1 - j)) & 1 for j in range(n))


def _mask(bits) -> int:
    m = 0
    for b in bits:
        m = (m << 1) | b
    return m


@dataclass(frozen=True)
class PauliOperator:
    """``i^c Z^u X^v`` on ``n`` qubits; immutable and hashable."""

    n: int
    u: tuple[int, ...]
    v: tuple[int, ...]
    c: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        if len(self.u) != self.n or len(self.v) != self.n:
            raise ValueError("u and v must have length n")
        if any(b not in (0, 1) for b in self.u + self.v):
            raise ValueError("u and v must be bit vectors")
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "c", self.c % 4)

    @classmethod
    def identity(cls, n) -> "PauliOperator":
        return cls(n, (0,) * n, (0,) * n, 0)

    @classmethod
    def from_label(cls, label, phase_exponent=0) -> "PauliOperator":
        """Build from a string of I/X/Y/Z letters, qubit 0 first.

        Each ``Y`` letter contributes the -i that makes the letter Hermitian,
        on top of the explicit ``phase_exponent``.
        """
        try:
            pairs = [_LETTERS[ch] for ch in label]
        except KeyError as exc:
            raise ValueError(f"unknown Pauli letter {exc.args[0]!r}") from None
        u = tuple(p[0] for p in pairs)
        v = tuple(p[1] for p in pairs)
        n_y = sum(a & b for a, b in zip(u, v))
        return cls(len(pairs), u, v, (phase_exponent + 3 * n_y) % 4)

    @classmethod
    def hermitian(cls, n, u, v) -> "PauliOperator":
        """The Hermitian representative with the given bit vectors.

        Positions with u_j = v_j = 1 are Y letters; the phase 3 * #Y makes
        the overall operator equal to the plain tensor product of letters.
        """
        u, v = tuple(u), tuple(v)
        n_y = sum(a & b for a, b in zip(u, v))
        return cls(n, u, v, (3 * n_y) % 4)

    @property
    def label(self) -> str:
        letters = {(0, 0): "I", (0, 1): "X", (1, 0): "Z", (1, 1): "Y"}
        return "".join(letters[(a, b)] for a, b in zip(self.u, self.v))

    @property
    def u_mask(self) -> int:
        return _mask(self.u)

    @property
    def v_mask(self) -> int:
        return _mask(self.v)

    def is_hermitian(self) -> bool:
        # (Z^u X^v)^dagger = (-1)^{u.v} Z^u X^v, so Hermitian iff c + #Y even.
        n_y = sum(a & b for a, b in zip(self.u, self.v))
        return (self.c + n_y) % 2 == 0

    def compose(self, other: "PauliOperator") -> "PauliOperator":
        """Operator product self @ other with the phase tracked mod 4.

        Moving the X block of self past the Z block of other picks up
        (-1)^{v_self . u_other}.
        """
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        cross = sum(a & b for a, b in zip(self.v, other.u))
        u = tuple(a ^ b for a, b in zip(self.u, other.u))
        v = tuple(a ^ b for a, b in zip(self.v, other.v))
        return PauliOperator(self.n, u, v, (self.c + other.c + 2 * cross) % 4)

    def __matmul__(self, other):
        return self.compose(other)

    def commutes_with(self, other: "PauliOperator") -> bool:
        return self.commutation_sign(other) == 1

    def commutation_sign(self, other: "PauliOperator") -> int:
        """+1 if the operators commute, -1 if they anticommute.

        The sign is (-1)^{u.v' + v.u'}, the symplectic inner product of the
        binary representations.
        """
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        sym = sum(a & b for a, b in zip(self.u, other.v))
        sym += sum(a & b for a, b in zip(self.v, other.u))
        return -1 if sym % 2 else 1

    def __str__(self):
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.c]
        return prefix + self.label


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense matrix of ``i^c Z^u X^v``."""
    if p.n > MAX_QUBITS:
        raise _cap_error(p.n)
    m = np.array([[1.0 + 0.0j]])
    for a, b in zip(p.u, p.v):
        factor = ID2
        if b:
            factor = X
        if a:
            factor = Z @ factor
        m = np.kron(m, factor)
    return (1j ** p.c) * m


def pauli_from_matrix(m) -> PauliOperator:
    """Recover the (n, u, v, c) form from a dense Pauli matrix.

    Raises ValueError if the matrix is not i^c Z^u X^v for any bit vectors
    (tolerance 1e-12 entrywise).
    """
    m = np.asarray(m, dtype=np.complex128)
    dim = m.shape[0]
    n = int(dim).bit_length() - 1
    if m.shape != (dim, dim) or 2**n != dim:
        raise ValueError("matrix dimension is not a power of two")

    col0 = m[:, 0]
    nz = np.flatnonzero(np.abs(col0) > 0.5)
    if len(nz) != 1:
        raise ValueError("not a Pauli matrix: first column is not a unit vector")
    v_mask = int(nz[0])
    # Entry (j ^ v, j) equals i^c (-1)^{u.(j^v)}; ratios against column 0
    # expose the u bits one at a time.
    base = col0[v_mask]
    u_bits = []
    for j in range(n):
        e = 1 << (n - 1 - j)
        val = m[e ^ v_mask, e]
        ratio = val / base
        if abs(ratio - 1) < 1e-6:
            u_bits.append(0)
        elif abs(ratio + 1) < 1e-6:
            u_bits.append(1)
        else:
            raise ValueError("not a Pauli matrix: inconsistent signs")
    u = tuple(u_bits)
    v = _bits(v_mask, n)
    u_dot_v = sum(a & b for a, b in zip(u, v))
    phase = base * (-1) ** u_dot_v
    c = None
    for k in range(4):
        if abs(phase - 1j**k) < 1e-6:
            c = k
            break
    if c is None:
        raise ValueError("not a Pauli matrix: phase is not a power of i")
    cand = PauliOperator(n, u, v, c)
    if not np.allclose(pauli_matrix(cand), m, atol=1e-12):
        raise ValueError("not a Pauli matrix")
    return cand


def _cap_error(n):
    from .errors import SimulationCapError

    return SimulationCapError(f"{n} qubits exceed the dense-simulation cap of {MAX_QUBITS}")


def _coefficient(data, n, u, v):
    # tr(P rho) with P = Z^u X^v: sum_a (-1)^{u.a} rho[a ^ v, a], then the
    # (-i)^{#Y} factor turning Z^u X^v into the Hermitian letter product.
    dim = 1 << n
    idx = np.arange(dim)
    u_mask, v_mask = _mask(u), _mask(v)
    t = idx & u_mask
    t = t ^ (t >> 8)
    t = t ^ (t >> 4)
    t = t ^ (t >> 2)
    t = t ^ (t >> 1)
    signs = 1.0 - 2.0 * (t & 1)
    tr = np.sum(signs * data[idx ^ v_mask, idx])
    n_y = sum(a & b for a, b in zip(u, v))
    return complex(tr * (-1j) ** n_y) / dim


def pauli_decompose(rho) -> dict[PauliOperator, float]:
    """Coefficients of rho over the Hermitian Pauli basis.

    Returns {P: alpha_P} with alpha_P = tr(P rho) / 2^n over all 4^n
    Hermitian letter products (direct trace inner products; adequate under
    the qubit cap). Coefficients are real for Hermitian input; the
    reconstruction sum_P alpha_P P reproduces rho.

    Raises ValueError for input that is not Hermitian to 1e-12.
    """
    data, n = _as_density_data(rho)
    if np.max(np.abs(data - data.conj().T)) > 1e-12:
        raise ValueError("matrix is not Hermitian to 1e-12")
    out = {}
    for u in product((0, 1), repeat=n):
        for v in product((0, 1), repeat=n):
            alpha = _coefficient(data, n, u, v)
            out[PauliOperator.hermitian(n, u, v)] = alpha.real
    return out


def is_xy_state(rho, message_qubits=None) -> bool:
    """True iff no decomposition term puts a bare Z on a message qubit.

    A term is disqualifying when its coefficient exceeds the zero tolerance
    and some message qubit carries u_j = 1, v_j = 0 (Y = iXZ is fine, plain
    Z is not). Only candidate violating terms are evaluated, with early
    exit on the first offender.
    """
    data, n = _as_density_data(rho)
    if message_qubits is None:
        message_qubits = range(n)
    message_qubits = sorted(set(message_qubits))
    if any(q < 0 or q >= n for q in message_qubits):
        raise ValueError("message qubit index out of range")
    for u in product((0, 1), repeat=n):
        for v in product((0, 1), repeat=n):
            if not any(u[q] == 1 and v[q] == 0 for q in message_qubits):
                continue
            if abs(_coefficient(data, n, u, v)) > COEFF_TOL:
                return False
    return True


@dataclass(frozen=True)
class BlochVector:
    """(r1, r2, r3) = (tr X rho, tr Y rho, tr Z rho) of a single qubit."""

    r1: float
    r2: float
    r3: float

    @property
    def norm_squared(self) -> float:
        return self.r1**2 + self.r2**2 + self.r3**2

    def is_pure(self, tol=1e-9) -> bool:
        return abs(self.norm_squared - 1.0) <= tol

    def to_density(self) -> np.ndarray:
        return (ID2 + self.r1 * X + self.r2 * Y + self.r3 * Z) / 2


def bloch_vector(rho) -> BlochVector:
    """Bloch vector of a single-qubit density matrix."""
    data, n = _as_density_data(rho)
    if n != 1:
        raise ValueError("Bloch vectors are defined for single qubits only")
    return BlochVector(
        float(np.trace(X @ data).real),
        float(np.trace(Y @ data).real),
        float(np.trace(Z @ data).real),
    )


def apply_pauli_data(data, p: PauliOperator) -> np.ndarray:
    """Raw-array conjugation P data P^dagger (phase drops out)."""
    if data.shape[0] != 1 << p.n:
        raise ValueError("dimension mismatch")
    return conj_pauli(data, p.u_mask, p.v_mask)


def _as_density_data(rho):
    """Accept DensityMatrix-like objects or bare arrays; return (array, n)."""
    data = getattr(rho, "data", rho)
    data = np.asarray(data, dtype=np.complex128)
    dim = data.shape[0]
    n = int(dim).bit_length() - 1
    if data.shape != (dim, dim) or 2**n != dim:
        raise ValueError("expected a 2^n x 2^n matrix")
    if n > MAX_QUBITS:
        raise _cap_error(n)
    return data, n
