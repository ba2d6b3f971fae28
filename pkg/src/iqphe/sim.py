"""Dense density-matrix simulation of diagonal-gate circuits.

States are 2^n x 2^n complex matrices (qubit 0 = most significant index
bit). The only evolutions needed here are conjugation by diagonal unitaries
and by Pauli operators, X-basis measurement, and the trace-distance metric;
all of them go through the kernel backend. Global phases never appear
because everything is a density matrix.

Measurements are deferred to the end of a circuit: ``run_circuit`` applies
every gate first and then resolves the measured subset, either as the exact
joint outcome distribution (projector enumeration) or as one sampled
outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pauli as pl
from .backend import conj_diag, conj_pauli, eigvalsh
from .circuits import DiagonalGate, IqpCircuit
from .errors import SimulationCapError
from .pauli import MAX_QUBITS, PauliOperator

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# Branches below this probability are numerically unpopulated and carry no
# post-measurement state.
PROB_FLOOR = 1e-14


class DensityMatrix:
    """An immutable 2^n x 2^n density operator.

    Construction checks Hermiticity and unit trace; positive
    semidefiniteness (an eigensolve) is checked on demand via
    :meth:`validate`, which file loading and the test suite call.
    """

    __slots__ = ("_data", "n")

    def __init__(self, data):
        data = np.array(data, dtype=np.complex128)
        dim = data.shape[0]
        n = int(dim).bit_length() - 1
        if data.ndim != 2 or data.shape != (dim, dim) or 2**n != dim:
            raise ValueError(f"expected a square 2^n matrix, got shape {data.shape}")
        if n > MAX_QUBITS:
            raise SimulationCapError(
                f"{n} qubits exceed the dense-simulation cap of {MAX_QUBITS}"
            )
        if np.max(np.abs(data - data.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian to 1e-12")
        tr = np.trace(data)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix has trace {tr}, expected 1")
        data.setflags(write=False)
        self._data = data
        self.n = n

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return 1 << self.n

    def validate(self) -> "DensityMatrix":
        """Full invariant check including positivity; returns self."""
        lo = float(eigvalsh(self._data)[0])
        if lo < -PSD_TOL:
            raise ValueError(f"density matrix has eigenvalue {lo} < -{PSD_TOL}")
        return self

    def isclose(self, other: "DensityMatrix", tol=1e-12) -> bool:
        return self.n == other.n and np.max(np.abs(self._data - other._data)) <= tol

    def __repr__(self):
        return f"DensityMatrix(n={self.n})"


@dataclass(frozen=True)
class MeasurementOutcome:
    qubit: int
    bit: int
    probability: float


def apply_diagonal(rho: DensityMatrix, gate: DiagonalGate) -> DensityMatrix:
    """U rho U^dagger for the diagonal unitary extended by identity."""
    d = gate.full_diagonal(rho.n)
    return DensityMatrix(conj_diag(rho.data, d))


def apply_pauli(rho: DensityMatrix, p: PauliOperator) -> DensityMatrix:
    """P rho P^dagger; the i^c phase cancels."""
    if p.n != rho.n:
        raise ValueError(f"Pauli on {p.n} qubits applied to {rho.n}-qubit state")
    return DensityMatrix(conj_pauli(rho.data, p.u_mask, p.v_mask))


def apply_z_pads(rho: DensityMatrix, bits) -> DensityMatrix:
    """Conjugate by Z^{bits}, one pad bit per qubit."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != rho.n:
        raise ValueError("need one pad bit per qubit")
    return apply_pauli(rho, PauliOperator(rho.n, bits, (0,) * rho.n))


def _x_flip_term(data, n, qubit):
    # X_q rho: row indices permuted by flipping bit q.
    dim = data.shape[0]
    idx = np.arange(dim) ^ (1 << (n - 1 - qubit))
    return data[idx, :]


def measure_x(rho: DensityMatrix, qubit: int):
    """X-basis measurement of one qubit.

    Returns ``(outcomes, posts)`` where ``outcomes`` is a pair of
    MeasurementOutcome (bit 0 for +, bit 1 for -) and ``posts`` maps each
    bit to the normalized post-measurement state (None when the outcome
    has zero probability).
    """
    if not 0 <= qubit < rho.n:
        raise ValueError(f"qubit {qubit} out of range for {rho.n} qubits")
    flipped = _x_flip_term(rho.data, rho.n, qubit)
    outcomes = []
    posts = {}
    for bit in (0, 1):
        sign = 1.0 if bit == 0 else -1.0
        # Pi rho Pi with Pi = (I + sign X_q)/2, assembled from the X_q rho
        # and rho X_q permutations.
        term = rho.data + sign * flipped
        term = (term + sign * _x_flip_term(term.T, rho.n, qubit).T) / 4.0
        p = float(np.trace(term).real)
        outcomes.append(MeasurementOutcome(qubit, bit, max(p, 0.0)))
        posts[bit] = DensityMatrix(term / p) if p > PROB_FLOOR else None
    return (outcomes[0], outcomes[1]), posts


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix | None:
    """Trace out every qubit not in ``keep`` (None if nothing is kept)."""
    keep = sorted(set(keep))
    if any(q < 0 or q >= rho.n for q in keep):
        raise ValueError("kept qubit index out of range")
    if not keep:
        return None
    if len(keep) == rho.n:
        return rho
    n = rho.n
    tensor = rho.data.reshape((2,) * (2 * n))
    traced = [q for q in range(n) if q not in keep]
    for count, q in enumerate(traced):
        ax = q - count  # axes shift left as earlier qubits are traced
        remaining = n - count
        tensor = np.trace(tensor, axis1=ax, axis2=ax + remaining)
    k = len(keep)
    return DensityMatrix(tensor.reshape((1 << k, 1 << k)))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """(1/2) sum |eigenvalues| of a - b."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return hermitian_trace_norm(a.data - b.data)


def hermitian_trace_norm(delta) -> float:
    """(1/2) tr sqrt(M^dagger M) for Hermitian M, via eigenvalues."""
    delta = np.asarray(delta, dtype=np.complex128)
    if np.max(np.abs(delta - delta.conj().T)) > 1e-10:
        raise ValueError("trace norm shortcut requires a Hermitian matrix")
    return 0.5 * float(np.sum(np.abs(eigvalsh(delta))))


@dataclass(frozen=True)
class CircuitResult:
    """Exact output of a circuit run.

    ``distribution`` maps outcome bit tuples (measured qubits in ascending
    order) to probabilities; ``branches`` maps the same keys to the
    normalized post-measurement state of the *unmeasured* qubits (None
    when no qubit is left).
    """

    state: DensityMatrix
    distribution: dict[tuple[int, ...], float]
    branches: dict[tuple[int, ...], DensityMatrix | None]


def _evolve(rho: DensityMatrix, circuit: IqpCircuit) -> DensityMatrix:
    for gate in circuit.gates:
        rho = apply_diagonal(rho, gate)
    return rho


def run_circuit(rho: DensityMatrix, circuit: IqpCircuit) -> CircuitResult:
    """Apply all gates, then resolve X measurements exactly.

    The joint distribution is built by sequential projector application
    over the measured subset, pruning zero-probability subtrees.
    """
    if circuit.n != rho.n:
        raise ValueError(f"{circuit.n}-qubit circuit on {rho.n}-qubit state")
    evolved = _evolve(rho, circuit)

    distribution: dict[tuple[int, ...], float] = {}
    branches: dict[tuple[int, ...], DensityMatrix | None] = {}
    stack = [((), 1.0, evolved)]
    order = circuit.measured
    while stack:
        bits, prob, state = stack.pop()
        depth = len(bits)
        if depth == len(order):
            distribution[bits] = prob
            branches[bits] = (
                partial_trace(state, circuit.unmeasured) if state is not None else None
            )
            continue
        (o0, o1), posts = measure_x(state, order[depth])
        for outcome in (o0, o1):
            p = outcome.probability
            if p <= PROB_FLOOR:
                continue
            stack.append((bits + (outcome.bit,), prob * p, posts[outcome.bit]))
    return CircuitResult(evolved, distribution, branches)


def sample_circuit(rho: DensityMatrix, circuit: IqpCircuit, rng):
    """One sampled run: (outcome bits, post state of unmeasured qubits)."""
    if circuit.n != rho.n:
        raise ValueError(f"{circuit.n}-qubit circuit on {rho.n}-qubit state")
    state = _evolve(rho, circuit)
    bits = []
    for q in circuit.measured:
        (o0, o1), posts = measure_x(state, q)
        bit = 0 if rng.random() < o0.probability else 1
        bits.append(bit)
        state = posts[bit]
        if state is None:  # picked a zero-probability branch; cannot happen
            raise RuntimeError("sampled an unpopulated branch")
    share = partial_trace(state, circuit.unmeasured)
    return tuple(bits), share


def ensemble_trace_distance(ens_a, ens_b) -> float:
    """Trace distance between two classical-quantum ensembles.

    Each ensemble maps classical keys to ``(probability, state-or-None)``.
    The classical register is diagonal, so the distance decomposes into
    blockwise trace norms; a missing key contributes its full weight.
    """
    total = 0.0
    for key in set(ens_a) | set(ens_b):
        pa, sa = ens_a.get(key, (0.0, None))
        pb, sb = ens_b.get(key, (0.0, None))
        if sa is None and sb is None:
            total += 0.5 * abs(pa - pb)
            continue
        dim = sa.dim if sa is not None else sb.dim
        ma = pa * sa.data if sa is not None else np.zeros((dim, dim), dtype=complex)
        mb = pb * sb.data if sb is not None else np.zeros((dim, dim), dtype=complex)
        total += hermitian_trace_norm(ma - mb)
    return total


def total_variation(dist_a: dict, dist_b: dict) -> float:
    keys = set(dist_a) | set(dist_b)
    return 0.5 * sum(abs(dist_a.get(k, 0.0) - dist_b.get(k, 0.0)) for k in keys)
