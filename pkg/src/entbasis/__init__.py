"""Orthonormal entangled two-qubit bases built from 2x2 matrices, and teleportation through them."""

from .basis import (
    EntangledBasis,
    InvalidBasis,
    ParamOutOfRange,
    QubitState,
    TwoQubitState,
    assemble_transform,
    builtin_basis,
    entanglement_determinant,
    expand_computational,
    load_basis,
    state_from_matrix,
    validate_basis,
)
from .linalg import SingularMatrix, polar_unitary
from .teleport import correction, decompose, fidelity, run

__version__ = "0.1.0"
