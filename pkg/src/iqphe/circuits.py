"""Diagonal gates and circuits made of them.

A circuit here is a list of gates diagonal in the computational basis plus
the subset of qubits to be measured in the X basis at the end. Gates carry
only their diagonal (a list of unit-modulus phases over the support
qubits); anything that cannot be written that way is not admissible.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import NotDiagonalError

PHASE_TOL = 1e-12
DIAG_TOL = 1e-12


@dataclass(frozen=True)
class DiagonalGate:
    """A diagonal unitary on 1-3 qubits.

    ``phases`` lists the diagonal over the support in binary order,
    support[0] owning the most significant local bit.
    """

    name: str
    support: tuple[int, ...]
    phases: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(q) for q in self.support))
        object.__setattr__(self, "phases", tuple(complex(p) for p in self.phases))
        k = len(self.support)
        if not 1 <= k <= 3:
            raise ValueError("gate support must cover 1 to 3 qubits")
        if len(set(self.support)) != k:
            raise ValueError(f"support indices must be distinct, got {self.support}")
        if any(q < 0 for q in self.support):
            raise ValueError("negative qubit index")
        if len(self.phases) != 1 << k:
            raise ValueError(f"need {1 << k} phases for {k} qubits")
        for p in self.phases:
            if abs(abs(p) - 1.0) > PHASE_TOL:
                raise ValueError(f"diagonal entry {p} is not unit modulus")

    def matrix(self) -> np.ndarray:
        """Dense matrix on the support qubits alone."""
        return np.diag(np.array(self.phases, dtype=np.complex128))

    def full_diagonal(self, n) -> np.ndarray:
        """Diagonal of the unitary extended by identity to ``n`` qubits."""
        if any(q >= n for q in self.support):
            raise ValueError(f"gate {self.name} on {self.support} does not fit {n} qubits")
        idx = np.arange(1 << n)
        local = np.zeros(1 << n, dtype=np.int64)
        k = len(self.support)
        for pos, q in enumerate(self.support):
            bit = (idx >> (n - 1 - q)) & 1
            local |= bit << (k - 1 - pos)
        return np.array(self.phases, dtype=np.complex128)[local]


def z_gate(q) -> DiagonalGate:
    return DiagonalGate("Z", (q,), (1, -1))


def s_gate(q) -> DiagonalGate:
    """The phase gate diag(1, i)."""
    return DiagonalGate("S", (q,), (1, 1j))


def t_gate(q) -> DiagonalGate:
    """diag(1, e^{i pi/4}); the textbook version only differs by global phase."""
    return DiagonalGate("T", (q,), (1, cmath.exp(1j * cmath.pi / 4)))


def cz_gate(q1, q2) -> DiagonalGate:
    return DiagonalGate("CZ", (q1, q2), (1, 1, 1, -1))


def cs_gate(q1, q2) -> DiagonalGate:
    return DiagonalGate("CS", (q1, q2), (1, 1, 1, 1j))


def ccz_gate(q1, q2, q3) -> DiagonalGate:
    return DiagonalGate("CCZ", (q1, q2, q3), (1, 1, 1, 1, 1, 1, 1, -1))


def diag_gate(support, phases) -> DiagonalGate:
    """A gate given directly by its diagonal."""
    return DiagonalGate("DIAG", tuple(support), tuple(phases))


GATE_FACTORIES = {
    "Z": z_gate,
    "S": s_gate,
    "T": t_gate,
    "CZ": cz_gate,
    "CS": cs_gate,
    "CCZ": ccz_gate,
}


@dataclass(frozen=True)
class IqpCircuit:
    """Diagonal gates followed by X-basis measurements of ``measured``."""

    n: int
    gates: tuple[DiagonalGate, ...] = ()
    measured: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(
            self, "measured", tuple(sorted(set(int(q) for q in self.measured)))
        )
        if self.n < 1:
            raise ValueError("need at least one qubit")
        for g in self.gates:
            if not isinstance(g, DiagonalGate):
                raise NotDiagonalError(f"gate {g!r} is not a diagonal gate", gate=g)
            if any(q >= self.n for q in g.support):
                raise ValueError(f"gate {g.name} on {g.support} outside {self.n} qubits")
        if any(q < 0 or q >= self.n for q in self.measured):
            raise ValueError("measured index out of range")

    @property
    def unmeasured(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n) if q not in self.measured)


def validate_iqp(n, gates, measured=()) -> IqpCircuit:
    """Check admissibility of a candidate circuit and build it.

    Gates may be ``DiagonalGate`` instances or ``(support, matrix)`` pairs
    with an explicit (possibly dense) matrix; the matrix form is accepted
    exactly when it is diagonal to 1e-12 with unit-modulus entries. The
    first offending gate is reported in the raised error.
    """
    checked = []
    for g in gates:
        if isinstance(g, DiagonalGate):
            # Construction already enforces unit-modulus diagonals, but run
            # the matrix test anyway as a defensive check.
            m = g.matrix()
            if np.max(np.abs(m - np.diag(np.diagonal(m)))) > DIAG_TOL:
                raise NotDiagonalError(f"gate {g.name} is not diagonal", gate=g)
            checked.append(g)
            continue
        support, matrix = g
        matrix = np.asarray(matrix, dtype=np.complex128)
        k = len(tuple(support))
        if matrix.shape != (1 << k, 1 << k):
            raise NotDiagonalError(
                f"gate on {tuple(support)} has shape {matrix.shape}, "
                f"expected {(1 << k, 1 << k)}",
                gate=g,
            )
        off = np.max(np.abs(matrix - np.diag(np.diagonal(matrix))))
        if off > DIAG_TOL:
            raise NotDiagonalError(
                f"gate on {tuple(support)} is not diagonal "
                f"(largest off-diagonal entry {off:.3e})",
                gate=g,
            )
        checked.append(diag_gate(tuple(support), np.diagonal(matrix)))
    return IqpCircuit(n, tuple(checked), tuple(measured))
