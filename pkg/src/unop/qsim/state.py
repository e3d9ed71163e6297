"""State vectors: a dense ``2**n`` array and a sparse sorted-index store.

Both backends share one interface so circuits run unchanged on either.
Wire ``i`` is bit ``i`` of a basis index.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Mapping, Sequence

import numpy as np

from .circuit import Circuit
from .gates import Gate

NORM_TOL = 1e-10
PRUNE_THRESHOLD = 1e-12
DENSE_MAX_WIRES = 26
SPARSE_MAX_WIRES = 62

BACKENDS = ("dense", "sparse")


class QuantumState(ABC):
    num_wires: int

    @abstractmethod
    def apply(self, gate: Gate) -> "QuantumState":
        """Apply ``gate`` in place and return ``self``."""

    @abstractmethod
    def copy(self) -> "QuantumState":
        ...

    @abstractmethod
    def nonzero(self, tol: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """Sorted basis indices with ``|amp| > tol`` and their amplitudes."""

    def norm(self) -> float:
        _, amps = self.nonzero()
        return float(np.sum(np.abs(amps) ** 2))

    def _check_wires(self, gate: Gate) -> None:
        bad = [w for w in gate.wires if w >= self.num_wires]
        if bad:
            raise IndexError(
                f"{gate!r} uses wire(s) {bad} but state has {self.num_wires} wires"
            )


class DenseState(QuantumState):
    def __init__(self, num_wires: int, basis_state: int = 0):
        if num_wires > DENSE_MAX_WIRES:
            raise MemoryError(
                f"dense backend limited to {DENSE_MAX_WIRES} wires, got {num_wires}"
            )
        if not 0 <= basis_state < (1 << num_wires):
            raise ValueError("basis state out of range")
        self.num_wires = num_wires
        self.vector = np.zeros(1 << num_wires, dtype=np.complex128)
        self.vector[basis_state] = 1.0

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "DenseState":
        vector = np.asarray(vector, dtype=np.complex128)
        n = int(vector.size).bit_length() - 1
        if vector.size != 1 << n:
            raise ValueError("vector length must be a power of two")
        obj = cls.__new__(cls)
        obj.num_wires = n
        obj.vector = vector.copy()
        return obj

    def copy(self) -> "DenseState":
        return DenseState.from_vector(self.vector)

    def apply(self, gate: Gate) -> "DenseState":
        self._check_wires(gate)
        n = self.num_wires
        psi = self.vector.reshape((2,) * n)
        # C-order reshape puts bit n-1 on axis 0
        idx: list = [slice(None)] * n
        for wire, polarity in gate.controls:
            idx[n - 1 - wire] = int(polarity)
        free_axes = [ax for ax in range(n) if not isinstance(idx[ax], int)]
        sub_axes = [free_axes.index(n - 1 - t) for t in gate.targets]
        k = len(gate.targets)
        sub = psi[tuple(idx)]
        mat = gate.matrix.reshape((2,) * (2 * k))
        out = np.tensordot(mat, sub, axes=(list(range(k, 2 * k)), sub_axes))
        psi[tuple(idx)] = np.moveaxis(out, list(range(k)), sub_axes)
        return self

    def nonzero(self, tol: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        idx = np.flatnonzero(np.abs(self.vector) > tol)
        return idx.astype(np.int64), self.vector[idx]


class SparseState(QuantumState):
    """Amplitudes held as parallel sorted ``indices``/``amps`` arrays.

    Entries with magnitude below ``prune`` are dropped after every gate.
    """

    def __init__(
        self, num_wires: int, basis_state: int = 0, prune: float = PRUNE_THRESHOLD
    ):
        if num_wires > SPARSE_MAX_WIRES:
            raise ValueError(f"sparse backend limited to {SPARSE_MAX_WIRES} wires")
        if not 0 <= basis_state < (1 << num_wires):
            raise ValueError("basis state out of range")
        self.num_wires = num_wires
        self.prune = prune
        self.indices = np.array([basis_state], dtype=np.int64)
        self.amps = np.array([1.0], dtype=np.complex128)

    @classmethod
    def from_mapping(
        cls, num_wires: int, amplitudes: Mapping[int, complex]
    ) -> "SparseState":
        obj = cls(num_wires)
        keys = np.array(sorted(amplitudes), dtype=np.int64)
        obj.indices = keys
        obj.amps = np.array([amplitudes[int(k)] for k in keys], dtype=np.complex128)
        obj._prune()
        return obj

    def copy(self) -> "SparseState":
        obj = SparseState(self.num_wires, prune=self.prune)
        obj.indices = self.indices.copy()
        obj.amps = self.amps.copy()
        return obj

    def __len__(self) -> int:
        return int(self.indices.size)

    def _prune(self) -> None:
        keep = np.abs(self.amps) >= self.prune
        if not keep.all():
            self.indices = self.indices[keep]
            self.amps = self.amps[keep]

    def apply(self, gate: Gate) -> "SparseState":
        self._check_wires(gate)
        idx, amps = self.indices, self.amps
        active = np.ones(idx.size, dtype=bool)
        for wire, polarity in gate.controls:
            active &= ((idx >> wire) & 1) == int(polarity)
        if not active.any():
            return self

        k = len(gate.targets)
        tmask = 0
        for t in gate.targets:
            tmask |= 1 << t
        # scatter[r]: basis bits that matrix row r writes onto the targets
        scatter = np.zeros(1 << k, dtype=np.int64)
        for r in range(1 << k):
            for j, t in enumerate(gate.targets):
                if (r >> (k - 1 - j)) & 1:
                    scatter[r] |= 1 << t

        a_idx, a_amp = idx[active], amps[active]
        col = np.zeros(a_idx.size, dtype=np.int64)
        for j, t in enumerate(gate.targets):
            col |= ((a_idx >> t) & 1) << (k - 1 - j)
        base = a_idx & ~np.int64(tmask)

        new_idx = [idx[~active]]
        new_amp = [amps[~active]]
        mat = gate.matrix
        for c in np.unique(col):
            sel = col == c
            b_sel, amp_sel = base[sel], a_amp[sel]
            for r in np.flatnonzero(mat[:, c]):
                new_idx.append(b_sel | scatter[r])
                new_amp.append(mat[r, c] * amp_sel)

        all_idx = np.concatenate(new_idx)
        all_amp = np.concatenate(new_amp)
        uniq, inverse = np.unique(all_idx, return_inverse=True)
        if uniq.size == all_idx.size:
            order = np.argsort(all_idx, kind="stable")
            self.indices, self.amps = all_idx[order], all_amp[order]
        else:
            re = np.bincount(inverse, weights=all_amp.real, minlength=uniq.size)
            im = np.bincount(inverse, weights=all_amp.imag, minlength=uniq.size)
            self.indices, self.amps = uniq, re + 1j * im
        self._prune()
        return self

    def nonzero(self, tol: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        keep = np.abs(self.amps) > tol
        return self.indices[keep], self.amps[keep]


def new_state(num_wires: int, basis_state: int = 0, backend: str = "dense") -> QuantumState:
    if backend == "dense":
        return DenseState(num_wires, basis_state)
    if backend == "sparse":
        return SparseState(num_wires, basis_state)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """Return a new state with ``gate`` applied; ``state`` is left untouched."""
    return state.copy().apply(gate)


def run(circuit: Circuit, backend: str = "dense") -> QuantumState:
    state = new_state(circuit.num_wires, circuit.initial_state, backend)
    for gate in circuit.gates:
        state.apply(gate)
    return state


def support(state: QuantumState, tol: float = 1e-10) -> list[tuple[int, complex]]:
    """Basis states with ``|amp| > tol`` ordered by index."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    idx, amps = state.nonzero(tol)
    return [(int(i), complex(a)) for i, a in zip(idx, amps)]


def read_register(indices: np.ndarray, wires: Sequence[int]) -> np.ndarray:
    """Register value (MSB-first wires) for each basis index."""
    indices = np.asarray(indices, dtype=np.int64)
    value = np.zeros(indices.shape, dtype=np.int64)
    for wire in wires:
        value = (value << 1) | ((indices >> wire) & 1)
    return value


def read_registers(
    indices: np.ndarray, registers: Mapping[str, Sequence[int]]
) -> dict[str, np.ndarray]:
    return {name: read_register(indices, ws) for name, ws in registers.items()}
