"""Gate type and the handful of standard gates the unoperation circuits need."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

UNITARITY_TOL = 1e-12

Control = Tuple[int, bool]
ControlSpec = Union[int, Tuple[int, bool]]


def unitarity_error(matrix: np.ndarray) -> float:
    """Max-norm of ``M^dagger M - I``."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def _normalize_controls(controls: Iterable[ControlSpec]) -> tuple[Control, ...]:
    out = []
    for c in controls:
        if isinstance(c, (tuple, list)):
            wire, polarity = c
        else:
            wire, polarity = c, True
        out.append((int(wire), bool(polarity)))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Gate:
    """A unitary on ordered ``targets`` with optional polarity controls.

    ``targets[0]`` is the most significant bit of the matrix row/column
    index. A control ``(wire, True)`` fires on ``|1>``, ``(wire, False)``
    on ``|0>``.
    """

    matrix: np.ndarray
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()
    name: str = field(default="u")

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        targets = tuple(int(t) for t in self.targets)
        controls = _normalize_controls(self.controls)
        k = len(targets)
        if k == 0:
            raise ValueError("gate needs at least one target wire")
        if matrix.shape != (1 << k, 1 << k):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match {k} target wire(s)"
            )
        wires = list(targets) + [w for w, _ in controls]
        if len(set(wires)) != len(wires):
            raise ValueError(f"gate wires must be pairwise distinct, got {wires}")
        if any(w < 0 for w in wires):
            raise ValueError(f"negative wire index in {wires}")
        err = unitarity_error(matrix)
        if err >= UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (max|M^dag M - I| = {err:.3e})")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "controls", controls)

    @property
    def wires(self) -> tuple[int, ...]:
        return self.targets + tuple(w for w, _ in self.controls)

    def controlled(self, *controls: ControlSpec) -> "Gate":
        """Same gate with extra controls prepended."""
        return Gate(
            self.matrix,
            self.targets,
            _normalize_controls(controls) + self.controls,
            name="c" + self.name,
        )

    def __repr__(self) -> str:
        ctl = ",".join(f"{w}{'' if p else '~'}" for w, p in self.controls)
        return f"Gate({self.name}, targets={self.targets}, controls=[{ctl}])"


_X = np.array([[0, 1], [1, 0]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def x(target: int, controls: Sequence[ControlSpec] = ()) -> Gate:
    return Gate(_X, (target,), tuple(controls), name="x")


def h(target: int, controls: Sequence[ControlSpec] = ()) -> Gate:
    return Gate(_H, (target,), tuple(controls), name="h")


def ry(theta: float, target: int, controls: Sequence[ControlSpec] = ()) -> Gate:
    return Gate(ry_matrix(theta), (target,), tuple(controls), name="ry")


def mcx(controls: Sequence[ControlSpec], target: int) -> Gate:
    """X on ``target`` when every control matches its polarity."""
    return Gate(_X, (target,), tuple(controls), name="mcx")


def unitary(matrix: np.ndarray, targets: Sequence[int], name: str = "u") -> Gate:
    return Gate(matrix, tuple(targets), (), name=name)
