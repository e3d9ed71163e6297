"""Self-checks for the full-unadder: unitarity, truth table, equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qsim import run, sample
from .qsim.gates import UNITARITY_TOL, unitarity_error
from .qsim.state import NORM_TOL, new_state, read_registers
from .unadd import (
    build_full_unadder_circuit,
    build_full_unadder_gate_circuit,
    build_rcu,
    full_unadder_matrix,
)

INPUTS = ((0, 0), (0, 1), (1, 0), (1, 1))

# (c_out, sum) -> {(c_in, b, a): probability}
TRUTH_TABLE = {
    (0, 0): {(0, 0, 0): 1.0},
    (0, 1): {(1, 0, 0): 1 / 3, (0, 1, 0): 1 / 3, (0, 0, 1): 1 / 3},
    (1, 0): {(0, 1, 1): 1 / 3, (1, 0, 1): 1 / 3, (1, 1, 0): 1 / 3},
    (1, 1): {(1, 1, 1): 1.0},
}

DIST_TOL = 1e-10
FREQ_TOL = 0.005


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def matrix_distribution(matrix: np.ndarray, c_out: int, sum_bit: int) -> dict:
    """Output distribution read straight off a matrix column."""
    col = np.asarray(matrix)[:, 4 * c_out + 2 * sum_bit]
    return {
        ((r >> 2) & 1, (r >> 1) & 1, r & 1): float(abs(col[r]) ** 2)
        for r in range(8)
        if abs(col[r]) ** 2 > DIST_TOL
    }


def circuit_distribution(circuit, backend: str = "dense") -> dict:
    idx, amps = run(circuit, backend).nonzero(DIST_TOL)
    regs = read_registers(idx, circuit.registers)
    dist: dict = {}
    for c, b, a, p in zip(
        regs["c_in"].tolist(), regs["b"].tolist(), regs["a"].tolist(),
        (np.abs(amps) ** 2).tolist(),
    ):
        dist[(c, b, a)] = dist.get((c, b, a), 0.0) + p
    return {k: v for k, v in dist.items() if v > DIST_TOL}


def distribution_gap(got: dict, want: dict) -> float:
    keys = set(got) | set(want)
    return max(abs(got.get(k, 0.0) - want.get(k, 0.0)) for k in keys)


def _norm_drift(circuit) -> float:
    state = new_state(circuit.num_wires, circuit.initial_state, "dense")
    worst = 0.0
    for gate in circuit.gates:
        state.apply(gate)
        worst = max(worst, abs(state.norm() - 1.0))
    return worst


def run_checks(
    matrix: Optional[np.ndarray] = None,
    shots: Optional[int] = None,
    seed: int = 0,
) -> list[Check]:
    """Every full-unadder check; ``matrix`` overrides the built-in gate."""
    m = full_unadder_matrix() if matrix is None else np.asarray(matrix, dtype=complex)
    checks = []

    err = unitarity_error(m)
    checks.append(Check("unitarity", err < UNITARITY_TOL, f"max|U^dag U - I| = {err:.2e}"))

    for c_out, s in INPUTS:
        want = TRUTH_TABLE[(c_out, s)]
        gap = distribution_gap(matrix_distribution(m, c_out, s), want)
        checks.append(
            Check(f"truth_table_gate[{c_out}{s}]", gap < DIST_TOL, f"max gap {gap:.2e}")
        )
    for c_out, s in INPUTS:
        want = TRUTH_TABLE[(c_out, s)]
        gap = distribution_gap(circuit_distribution(build_full_unadder_circuit(c_out, s)), want)
        checks.append(
            Check(f"truth_table_circuit[{c_out}{s}]", gap < DIST_TOL, f"max gap {gap:.2e}")
        )
    for c_out, s in INPUTS:
        gap = distribution_gap(
            circuit_distribution(build_full_unadder_circuit(c_out, s)),
            matrix_distribution(m, c_out, s),
        )
        checks.append(
            Check(f"equivalence[{c_out}{s}]", gap < DIST_TOL, f"max gap {gap:.2e}")
        )

    drift = max(
        [_norm_drift(build_full_unadder_circuit(c, s)) for c, s in INPUTS]
        + [_norm_drift(build_rcu(3, 6))]
    )
    checks.append(Check("norm_preservation", drift < NORM_TOL, f"max drift {drift:.2e}"))

    if shots is not None:
        builders = {
            "circuit": build_full_unadder_circuit,
            "gate": build_full_unadder_gate_circuit,
        }
        for label, build in builders.items():
            for c_out, s in ((0, 1), (1, 0)):
                circuit = build(c_out, s)
                layout = {k: circuit.registers[k] for k in ("c_in", "b", "a")}
                freqs = sample(run(circuit), layout, shots, seed).frequencies()
                want = TRUTH_TABLE[(c_out, s)]
                gap = distribution_gap(freqs, want)
                checks.append(
                    Check(
                        f"sampling_{label}[{c_out}{s}]",
                        gap < FREQ_TOL and set(freqs) == set(want),
                        f"{shots} shots, max |freq - p| = {gap:.2e}",
                    )
                )
    return checks
