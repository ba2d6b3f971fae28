"""The four scheme algorithms: key generation, encryption, evaluation, decryption.

Encryption hides each qubit under a Z one-time pad whose bit comes from the
secret hash function applied to fresh per-qubit randomness r. Diagonal
gates commute with Z pads, so the evaluator can run a circuit directly on
the padded state without any key material; X-basis outcomes come out masked
by the pad bits, and decryption is a per-qubit unpad (XOR for measured
bits, one more Z conjugation for quantum shares) -- constant work per
qubit, independent of the evaluated circuit.

Equator-plane states (no bare-Z Pauli terms) are exactly hidden by the pad;
encryption accepts anything but warns when the input leaves that space.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from .circuits import IqpCircuit
from .errors import NonXYInputWarning, ParamsMismatchError, RemeasurementError
from .hashing import MAX_KAPPA, HashFunction, as_rng, eval_hash, sample_hash
from .pauli import MAX_QUBITS, PauliOperator, is_xy_state
from .sim import DensityMatrix, apply_pauli, run_circuit, sample_circuit


@dataclass(frozen=True)
class SchemeParams:
    """kappa: bits of per-qubit randomness; max_qubits: message bound N;
    k: independence order of the hash family (defaults to max(kappa, N))."""

    kappa: int
    max_qubits: int
    k: int = 0

    def __post_init__(self):
        if self.k == 0:
            object.__setattr__(self, "k", max(self.kappa, self.max_qubits))
        if not 1 <= self.kappa <= MAX_KAPPA:
            raise ValueError(f"kappa must be in 1..{MAX_KAPPA}")
        if not 1 <= self.max_qubits <= MAX_QUBITS:
            raise ValueError(f"max_qubits must be in 1..{MAX_QUBITS}")
        if self.k < self.max_qubits:
            # Pad bits on distinct r values are jointly uniform only up to
            # k-tuples, so k below the message bound would leak.
            raise ValueError("independence order k must be >= max_qubits")


@dataclass(frozen=True)
class SecretKey:
    params: SchemeParams
    h: HashFunction

    def __post_init__(self):
        if self.h.kappa != self.params.kappa or self.h.k != self.params.k:
            raise ParamsMismatchError("hash function does not match params")

    @property
    def bit_length(self) -> int:
        return self.h.bit_length


@dataclass(frozen=True)
class Ciphertext:
    """Per-qubit randomness r (in the clear), measurement registers mu
    (None until a qubit is measured), and the joint quantum share of the
    still-unmeasured qubits.

    The share is held as one joint density matrix because gates entangle
    qubits mid-evaluation; the per-qubit (r, mu) bookkeeping is unaffected.
    Measured qubits have no quantum share: the register replaces it.
    """

    params: SchemeParams
    r: tuple[int, ...]
    mu: tuple[int | None, ...]
    share: DensityMatrix | None

    def __post_init__(self):
        n = len(self.r)
        if len(self.mu) != n:
            raise ValueError("need one register per qubit")
        if any(not 0 <= ri < (1 << self.params.kappa) for ri in self.r):
            raise ValueError("r value outside {0,1}^kappa")
        if any(m not in (None, 0, 1) for m in self.mu):
            raise ValueError("registers must be None, 0 or 1")
        unmeasured = sum(1 for m in self.mu if m is None)
        share_qubits = self.share.n if self.share is not None else 0
        if share_qubits != unmeasured:
            raise ValueError(
                f"share covers {share_qubits} qubits, expected {unmeasured}"
            )

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def unmeasured(self) -> tuple[int, ...]:
        return tuple(q for q, m in enumerate(self.mu) if m is None)

    def classical_bits(self) -> int:
        """Classical payload: n randomness strings plus the registers."""
        return self.n * self.params.kappa + self.n


@dataclass(frozen=True)
class DecryptionResult:
    state: DensityMatrix | None
    bits: dict[int, int]


def keygen(params: SchemeParams, rng=None) -> SecretKey:
    """Draw the secret hash function uniformly. There is no evaluation key."""
    return SecretKey(params, sample_hash(params.kappa, params.k, as_rng(rng)))


def pad_bits(sk: SecretKey, r) -> tuple[int, ...]:
    """The Z-pad bit h(r_q) for each qubit."""
    return tuple(eval_hash(sk.h, ri) for ri in r)


def _pad_share(share: DensityMatrix, qubits, bits) -> DensityMatrix:
    """Conjugate the share by Z pads sitting on the given local positions."""
    u = [0] * share.n
    for pos, b in zip(qubits, bits):
        u[pos] = b
    return apply_pauli(share, PauliOperator(share.n, tuple(u), (0,) * share.n))


def encrypt(sk: SecretKey, rho: DensityMatrix, rng=None) -> Ciphertext:
    """Per-qubit: draw fresh r, apply Z^{h(r)}; registers start unset.

    Inputs with bare-Z decomposition terms are accepted (the scheme is
    total) but trigger NonXYInputWarning: the hiding guarantee does not
    cover them.
    """
    if rho.n > sk.params.max_qubits:
        raise ValueError(
            f"{rho.n} qubits exceed the message bound {sk.params.max_qubits}"
        )
    rng = as_rng(rng)
    if not is_xy_state(rho):
        warnings.warn(
            "plaintext has bare-Z Pauli terms; the pad does not hide it",
            NonXYInputWarning,
            stacklevel=2,
        )
    r = tuple(int(x) for x in rng.integers(0, 1 << sk.params.kappa, size=rho.n))
    bits = pad_bits(sk, r)
    padded = _pad_share(rho, range(rho.n), bits)
    return Ciphertext(sk.params, r, (None,) * rho.n, padded)


def _check_evaluable(circuit: IqpCircuit, ct: Ciphertext):
    if circuit.n != ct.n:
        raise ValueError(f"{circuit.n}-qubit circuit on {ct.n}-qubit ciphertext")
    already = [q for q in circuit.measured if ct.mu[q] is not None]
    if already:
        raise RemeasurementError(f"register already set for qubits {already}")
    if ct.unmeasured != tuple(range(ct.n)):
        # Supporting partially evaluated ciphertexts would need share-index
        # remapping; evaluation starts from a fresh ciphertext.
        raise RemeasurementError("ciphertext was already evaluated")


def evaluate(circuit: IqpCircuit, ct: Ciphertext, rng=None) -> Ciphertext:
    """Run the circuit on the padded share; store masked outcomes.

    Takes no key material. Gates are applied as-is (they commute with the
    pads); measured qubits get their raw X-basis outcome written to mu and
    their collapsed share discarded; r passes through untouched.
    """
    _check_evaluable(circuit, ct)
    bits, share = sample_circuit(ct.share, circuit, as_rng(rng))
    mu = list(ct.mu)
    for q, b in zip(circuit.measured, bits):
        mu[q] = b
    return replace(ct, mu=tuple(mu), share=share)


def evaluate_ensemble(circuit: IqpCircuit, ct: Ciphertext):
    """All evaluation branches with exact probabilities.

    Returns a list of (probability, Ciphertext); the per-branch ciphertexts
    are exactly what :func:`evaluate` would produce when sampling lands on
    that branch. Used by the correctness checker.
    """
    _check_evaluable(circuit, ct)
    result = run_circuit(ct.share, circuit)
    out = []
    for bits, prob in result.distribution.items():
        mu = list(ct.mu)
        for q, b in zip(circuit.measured, bits):
            mu[q] = b
        out.append((prob, replace(ct, mu=tuple(mu), share=result.branches[bits])))
    return out


def decrypt(sk: SecretKey, ct: Ciphertext) -> DecryptionResult:
    """Per-qubit unpad: XOR h(r) into measured registers, conjugate the
    remaining share by its Z pads. Cost is linear in the qubit count and
    does not depend on whatever circuit was evaluated."""
    if sk.params != ct.params:
        raise ParamsMismatchError(
            f"key params {sk.params} do not match ciphertext params {ct.params}"
        )
    bits = pad_bits(sk, ct.r)
    measured_bits = {
        q: bits[q] ^ ct.mu[q] for q in range(ct.n) if ct.mu[q] is not None
    }
    state = None
    if ct.share is not None:
        unmeasured = ct.unmeasured
        state = _pad_share(ct.share, range(len(unmeasured)), [bits[q] for q in unmeasured])
    return DecryptionResult(state, measured_bits)
