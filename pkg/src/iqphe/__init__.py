"""Homomorphic encryption for diagonal-gate (IQP) circuits.

Encryption is a per-qubit Z one-time pad keyed by a k-wise independent
hash family; diagonal circuits evaluate directly on ciphertexts and
X-basis outcomes decrypt by XOR. The package bundles the exact simulator,
the scheme, security/correctness checkers, the communication lower-bound
calculators, and a CLI with a client/server delegation demo.
"""

from .backend import BACKEND
from .circuits import (
    DiagonalGate,
    IqpCircuit,
    ccz_gate,
    cs_gate,
    cz_gate,
    diag_gate,
    s_gate,
    t_gate,
    z_gate,
)
from .errors import (
    EnumerationCapError,
    NonXYInputWarning,
    NotDiagonalError,
    ParamsMismatchError,
    RemeasurementError,
    SimulationCapError,
)
from .hashing import HashFunction, enumerate_family, eval_hash, sample_hash
from .pauli import (
    BlochVector,
    PauliOperator,
    bloch_vector,
    is_xy_state,
    pauli_decompose,
    pauli_from_matrix,
    pauli_matrix,
)
from .scheme import (
    Ciphertext,
    DecryptionResult,
    SchemeParams,
    SecretKey,
    decrypt,
    encrypt,
    evaluate,
    evaluate_ensemble,
    keygen,
)
from .sim import (
    CircuitResult,
    DensityMatrix,
    MeasurementOutcome,
    apply_diagonal,
    apply_pauli,
    apply_z_pads,
    measure_x,
    partial_trace,
    run_circuit,
    sample_circuit,
    trace_distance,
)
from .verify import (
    QpirBoundInput,
    ReductionAudit,
    VerificationReport,
    amplify_weak_to_strong,
    binary_entropy,
    check_correctness,
    check_weak_security,
    collision_bound,
    qpir_lower_bound,
    qpir_reduction_audit,
)
from .circuits import validate_iqp

__version__ = "0.1.0"
