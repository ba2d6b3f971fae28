"""Executable correctness and security checks plus the lower-bound arithmetic.

Three families of checks live here:

* ``check_correctness``: exact residual of the decrypt(evaluate(encrypt()))
  pipeline against the plain circuit run, maximized over sampled keys and
  encryption randomness. The pipeline is algebraically exact, so the
  residual is pure float noise.

* ``check_weak_security``: trace distance between the ciphertext ensembles
  of two plaintexts. Exact mode enumerates every r vector and, on r
  collisions, the whole hash family; the r registers are classical, so the
  distance decomposes blockwise. No Monte Carlo estimation anywhere --
  trace distance is not an expectation, and sampling it is biased. Beyond
  the enumeration caps, ``mode="bound"`` returns a certified upper bound
  (distinct-r blocks are computed exactly; collision mass is bounded by 1).

* The communication lower bound for single-server private information
  retrieval with imperfect correctness/security, and the audit showing a
  compact-ciphertext fully homomorphic scheme would violate it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np

from .circuits import IqpCircuit
from .errors import EnumerationCapError
from .hashing import FAMILY_CAP, as_rng, family_truth_tables
from .scheme import (
    Ciphertext,
    SchemeParams,
    decrypt,
    encrypt,
    evaluate_ensemble,
    keygen,
)
from .sim import (
    DensityMatrix,
    apply_z_pads,
    ensemble_trace_distance,
    hermitian_trace_norm,
    run_circuit,
    total_variation,
)

# Exact security mode enumerates 2^(kappa*n) r vectors.
R_ENUMERATION_CAP = 1 << 18


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check; reproducible from (seed, params)."""

    check: str
    value: float
    tolerance: float
    passed: bool
    trials: int = 0
    seed: int | None = None
    params: dict | None = None
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self, indent=2) -> str:
        return json.dumps(asdict(self), indent=indent, sort_keys=True)


def _params_dict(params: SchemeParams) -> dict:
    return {"kappa": params.kappa, "max_qubits": params.max_qubits, "k": params.k}


def pipeline_residual(sk, circuit: IqpCircuit, rho: DensityMatrix, rng) -> tuple[float, dict]:
    """Exact distance for one (key, randomness) draw.

    Returns the classical-quantum trace distance between the decrypted
    pipeline output and the plain circuit output, plus diagnostics (the
    measured-bit total variation is a marginal of the same comparison).
    """
    ct = encrypt(sk, rho, rng)
    plain = run_circuit(rho, circuit)
    ens_plain = {
        bits: (prob, plain.branches[bits]) for bits, prob in plain.distribution.items()
    }
    ens_dec = {}
    for prob, branch in evaluate_ensemble(circuit, ct):
        res = decrypt(sk, branch)
        bits = tuple(res.bits[q] for q in circuit.measured)
        if bits in ens_dec:  # masked outcomes decrypt bijectively
            raise RuntimeError("duplicate decrypted outcome")
        ens_dec[bits] = (prob, res.state)
    distance = ensemble_trace_distance(ens_dec, ens_plain)
    tv = total_variation(
        {k: p for k, (p, _) in ens_dec.items()},
        {k: p for k, (p, _) in ens_plain.items()},
    )
    return distance, {"bit_total_variation": tv, "r": list(ct.r)}


def check_correctness(
    params: SchemeParams,
    circuit: IqpCircuit,
    rho: DensityMatrix,
    trials: int = 20,
    seed: int | None = 0,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """Maximum pipeline residual over freshly sampled keys and randomness."""
    rng = as_rng(seed)
    worst = -1.0
    witness: dict = {}
    max_tv = 0.0
    for trial in range(trials):
        sk = keygen(params, rng)
        distance, info = pipeline_residual(sk, circuit, rho, rng)
        max_tv = max(max_tv, info["bit_total_variation"])
        if distance > worst:
            worst = distance
            witness = {
                "trial": trial,
                "r": info["r"],
                "key_coefficients": list(sk.h.coefficients),
            }
    return VerificationReport(
        check="correctness",
        value=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        trials=trials,
        seed=seed,
        params=_params_dict(params),
        witness=witness,
        details={"max_bit_total_variation": max_tv},
    )


def _pad_law(r_vec, kappa, k) -> dict[tuple[int, ...], float]:
    """Joint distribution of the pad bits (h(r_1), ..., h(r_n)) over the family.

    All-distinct r values give the exactly uniform law (joint uniformity up
    to k-tuples); any collision falls back to exhaustively enumerating the
    family's truth tables.
    """
    n = len(r_vec)
    if len(set(r_vec)) == n:
        w = 1.0 / (1 << n)
        return {bits: w for bits in product((0, 1), repeat=n)}
    tables = family_truth_tables(kappa, k)
    counts: dict[tuple[int, ...], int] = {}
    for table in tables:
        bits = tuple(table[r] for r in r_vec)
        counts[bits] = counts.get(bits, 0) + 1
    size = len(tables)
    return {bits: cnt / size for bits, cnt in counts.items()}


def _pad_average(rho: DensityMatrix, law: dict) -> np.ndarray:
    """sum_b law[b] Z^b rho Z^b (an unnormalized-weights convex average)."""
    out = np.zeros(rho.data.shape, dtype=np.complex128)
    for bits, w in law.items():
        if w == 0.0:
            continue
        out += w * apply_z_pads(rho, bits).data
    return out


def _distinct_r_probability(n: int, kappa: int) -> float:
    space = 1 << kappa
    p = 1.0
    for i in range(n):
        p *= (space - i) / space
    return p


def full_pad_twirl(rho: DensityMatrix) -> np.ndarray:
    """Average over all 2^n independent pad patterns."""
    law = {bits: 1.0 / (1 << rho.n) for bits in product((0, 1), repeat=rho.n)}
    return _pad_average(rho, law)


def check_weak_security(
    params: SchemeParams,
    rho_a: DensityMatrix,
    rho_b: DensityMatrix,
    mode: str = "exact",
    tolerance: float | None = None,
) -> VerificationReport:
    """Trace distance between the ciphertext ensembles of two plaintexts.

    ``exact``: enumerate all r vectors; blockwise distance with the exact
    pad law per block. Also reports the distance conditioned on all-distinct
    r draws. ``bound``: a certified upper bound without enumeration --
    exact distinct-r block distance plus the full collision mass.
    """
    if rho_a.n != rho_b.n:
        raise ValueError("plaintexts must have the same qubit count")
    n = rho_a.n
    if n > params.max_qubits:
        raise ValueError(f"{n} qubits exceed the message bound {params.max_qubits}")
    if tolerance is None:
        tolerance = collision_bound(params) + 1e-9

    p_distinct = _distinct_r_probability(n, params.kappa)

    if mode == "bound":
        twirl_distance = hermitian_trace_norm(full_pad_twirl(rho_a) - full_pad_twirl(rho_b))
        value = min(1.0, twirl_distance * p_distinct + (1.0 - p_distinct))
        return VerificationReport(
            check="weak-security-bound",
            value=value,
            tolerance=tolerance,
            passed=value <= tolerance,
            params=_params_dict(params),
            details={
                "mode": "bound",
                "distance_given_distinct_r": twirl_distance,
                "collision_probability": 1.0 - p_distinct,
                "collision_union_bound": collision_bound(params),
            },
        )
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'bound'")

    n_vectors = 1 << (params.kappa * n)
    if n_vectors > R_ENUMERATION_CAP:
        raise EnumerationCapError(
            f"2^{params.kappa * n} r vectors exceed the exact-mode cap"
        )
    if n >= 2 and (1 << (params.k * params.kappa)) > FAMILY_CAP:
        raise EnumerationCapError(
            f"family of size 2^{params.k * params.kappa} exceeds the enumeration cap"
        )

    weight = 1.0 / n_vectors
    total = 0.0
    distinct_sum = 0.0
    distinct_count = 0
    worst = (-1.0, None)
    for r_vec in product(range(1 << params.kappa), repeat=n):
        law = _pad_law(r_vec, params.kappa, params.k)
        delta = hermitian_trace_norm(_pad_average(rho_a, law) - _pad_average(rho_b, law))
        total += weight * delta
        if len(set(r_vec)) == n:
            distinct_sum += delta
            distinct_count += 1
        if delta > worst[0]:
            worst = (delta, r_vec)

    given_distinct = distinct_sum / distinct_count if distinct_count else 0.0
    return VerificationReport(
        check="weak-security",
        value=total,
        tolerance=tolerance,
        passed=total <= tolerance,
        params=_params_dict(params),
        witness={"worst_r": list(worst[1]), "worst_block_distance": worst[0]},
        details={
            "mode": "exact",
            "distance_given_distinct_r": given_distinct,
            "collision_probability": 1.0 - p_distinct,
            "collision_union_bound": collision_bound(params),
            "r_vectors": n_vectors,
        },
    )


def collision_bound(params: SchemeParams) -> float:
    """Union bound on any two of the N per-qubit r draws colliding.

    Collisions are the only event where the pad bits can correlate, so this
    also upper-bounds the ciphertext-ensemble distance between equator-plane
    plaintexts.
    """
    n = params.max_qubits
    return (n * (n - 1) / 2) * 2.0 ** (-params.kappa)


def amplify_weak_to_strong(eps_weak: float, n_qubits: int) -> float:
    """Security error after adding an arbitrary reference system.

    A scheme that hides n-qubit messages with error eps in the plain
    (no-side-information) sense hides them with error at most
    2^(2n+1) * eps against entangled side information; clamped at 1.
    """
    if not 0.0 <= eps_weak <= 1.0:
        raise ValueError("eps_weak must lie in [0, 1]")
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    return min(1.0, 2.0 ** (2 * n_qubits + 1) * eps_weak)


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


@dataclass(frozen=True)
class QpirBoundInput:
    """One-server private-information-retrieval instance: database size n,
    correctness error delta, security error epsilon."""

    n: int
    delta: float
    epsilon: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("database size must be >= 1")
        if not 0.0 <= self.delta <= 0.5 or not 0.0 <= self.epsilon <= 0.5:
            raise ValueError("delta and epsilon must lie in [0, 1/2]")
        if not 0.0 <= self.entropy_argument <= 1.0:
            raise ValueError("entropy argument outside [0, 1]")

    @property
    def entropy_argument(self) -> float:
        return 1.0 - self.delta - 2.0 * math.sqrt(self.epsilon * (1.0 - self.epsilon))


def qpir_lower_bound(inp: QpirBoundInput) -> float:
    """Minimum communication in qubits: (1 - H(1 - d - 2 sqrt(e(1-e)))) n."""
    return (1.0 - binary_entropy(inp.entropy_argument)) * inp.n


@dataclass(frozen=True)
class ReductionAudit:
    """Communication accounting for retrieving one of n = 100 p^2 database
    bits through a scheme that encrypts a qubit into at most p qubits:
    the client ships log2(n) encrypted index qubits and receives one
    evaluated ciphertext back."""

    p: int
    n: int
    delta: float
    epsilon: float
    communicated: float
    lower_bound: float
    contradiction: bool

    def to_dict(self) -> dict:
        return asdict(self)


def qpir_reduction_audit(p_kappa: int, delta: float, epsilon: float) -> ReductionAudit:
    """Audit whether the induced retrieval protocol beats the lower bound.

    communicated = p (1 + log2 n) qubits with n = 100 p^2; contradiction
    means the protocol would communicate less than the proven minimum.
    """
    if p_kappa < 1:
        raise ValueError("ciphertext expansion p must be >= 1")
    n = 100 * p_kappa**2
    communicated = p_kappa * (1.0 + math.log2(n))
    bound = qpir_lower_bound(QpirBoundInput(n, delta, epsilon))
    return ReductionAudit(
        p=p_kappa,
        n=n,
        delta=delta,
        epsilon=epsilon,
        communicated=communicated,
        lower_bound=bound,
        contradiction=communicated < bound,
    )
