"""Small-scale quantum circuit simulator with dense and sparse backends."""

from .circuit import Circuit, CircuitBuilder
from .gates import Gate, h, mcx, ry, ry_matrix, unitarity_error, unitary, x
from .sampling import ShotResult, sample
from .state import (
    BACKENDS,
    DenseState,
    QuantumState,
    SparseState,
    apply_gate,
    new_state,
    read_register,
    read_registers,
    run,
    support,
)

__all__ = [
    "BACKENDS",
    "Circuit",
    "CircuitBuilder",
    "DenseState",
    "Gate",
    "QuantumState",
    "ShotResult",
    "SparseState",
    "apply_gate",
    "h",
    "mcx",
    "new_state",
    "read_register",
    "read_registers",
    "ry",
    "ry_matrix",
    "run",
    "sample",
    "support",
    "unitarity_error",
    "unitary",
    "x",
]
