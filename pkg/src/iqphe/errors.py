"""Exception types shared across the package."""


class SimulationCapError(ValueError):
    """A dense-matrix operation was requested above the qubit cap."""


class NotDiagonalError(ValueError):
    """A circuit contains a gate that is not diagonal in the computational basis."""

    def __init__(self, message, gate=None):
        super().__init__(message)
        self.gate = gate


class ParamsMismatchError(ValueError):
    """Key and ciphertext were produced with different scheme parameters."""


class RemeasurementError(ValueError):
    """A measurement register that is already set would be overwritten."""


class EnumerationCapError(ValueError):
    """Exact-mode verification was requested beyond the exhaustive-enumeration caps."""


class NonXYInputWarning(UserWarning):
    """The plaintext has a bare-Z term in its Pauli decomposition.

    Encryption still works, but the hiding guarantee only covers states
    built from {I, X, Y} tensor factors.
    """
