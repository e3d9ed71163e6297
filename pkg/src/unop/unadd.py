"""Full-unadder (gate and 5-wire circuit) and the ripple-carry unadder.

A full-unadder takes ``(c_out, sum)`` and produces an equal-weight
superposition of every ``(c_in, b, a)`` with ``a + b + c_in = sum + 2*c_out``.
Chaining ``n`` of them MSB-first inverts an ``n``-bit ripple-carry adder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .oracle import Triple
from .qsim import Circuit, CircuitBuilder, Gate, QuantumState, run, sample
from .qsim.state import read_registers

# Ry angle that puts amplitude sqrt(2/3) on |0> and sqrt(1/3) on |1>
W_ANGLE = 2 * np.arccos(np.sqrt(2 / 3))


def full_unadder_matrix() -> np.ndarray:
    """The 8x8 full-unadder unitary.

    Column index is ``4*c_out + 2*sum + ancilla``; row index is
    ``4*c_in + 2*b + a``.
    """
    r2, r3, r6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)
    m = np.zeros((8, 8), dtype=np.complex128)
    m[0, 0] = 1
    m[1, 1], m[1, 2], m[1, 3] = 1 / r2, 1 / r3, -1 / r6
    m[2, 1], m[2, 2], m[2, 3] = -1 / r2, 1 / r3, -1 / r6
    m[3, 4], m[3, 5], m[3, 7] = 1 / r3, 1 / r2, -1 / r6
    m[4, 2], m[4, 3] = 1 / r3, 2 / r6
    m[5, 4], m[5, 5], m[5, 7] = 1 / r3, -1 / r2, -1 / r6
    m[6, 4], m[6, 7] = 1 / r3, 2 / r6
    m[7, 6] = 1
    return m


_FULL_UNADDER = full_unadder_matrix()


def full_unadder_gate(carry: int, sum_wire: int, ancilla: int) -> Gate:
    """Optimised full-unadder on ``(carry, sum, ancilla)``.

    Afterwards ``carry`` holds ``c_in``, ``sum_wire`` holds ``b`` and
    ``ancilla`` holds ``a``.
    """
    return Gate(_FULL_UNADDER, (carry, sum_wire, ancilla), name="unadd_opt")


def full_unadder_gates(
    c_out: int, sum_wire: int, c_in: int, b: int, a: int
) -> list[Gate]:
    """Gate sequence of the 5-wire full-unadder.

    ``c_in``, ``b`` and ``a`` must start in ``|0>``. Input (0, 0) needs no
    gates. Each of the other three inputs gets its own section, selected
    by polarity controls on ``(c_out, sum_wire)``.
    """
    builder = CircuitBuilder(max(c_out, sum_wire, c_in, b, a) + 1)

    def w_state(sel: list) -> None:
        # (|100> + |010> + |001>)/sqrt(3) on (c_in, b, a)
        builder.ry(W_ANGLE, c_in, sel)
        builder.h(b, sel + [(c_in, False)])
        builder.x(a, sel + [(c_in, False), (b, False)])

    # (0, 1): one of c_in, b, a is set
    w_state([(c_out, False), (sum_wire, True)])
    # (1, 0): two of them are set, i.e. the complement of the W state
    sel = [(c_out, True), (sum_wire, False)]
    w_state(sel)
    for wire in (c_in, b, a):
        builder.x(wire, sel)
    # (1, 1): all three set
    sel = [(c_out, True), (sum_wire, True)]
    for wire in (c_in, b, a):
        builder.x(wire, sel)
    return list(builder.build().gates)


def _check_bits(c_out: int, sum_bit: int) -> None:
    if c_out not in (0, 1) or sum_bit not in (0, 1):
        raise ValueError("c_out and sum must be bits")


def build_full_unadder_circuit(c_out: int = 0, sum_bit: int = 0) -> Circuit:
    """5-wire full-unadder on ``|c_out>|sum>|000>`` with the input loaded.

    Wires: 0 = c_out, 1 = sum, 2 = c_in, 3 = b, 4 = a.
    """
    _check_bits(c_out, sum_bit)
    builder = CircuitBuilder(5)
    builder.prepare_value([0, 1], 2 * c_out + sum_bit)
    builder.extend(full_unadder_gates(0, 1, 2, 3, 4))
    builder.add_register("c_in", [2]).add_register("b", [3]).add_register("a", [4])
    return builder.build()


def build_full_unadder_gate_circuit(c_out: int = 0, sum_bit: int = 0) -> Circuit:
    """3-wire circuit: load ``(c_out, sum)`` and apply the optimised gate.

    Wires: 0 = carry (ends as c_in), 1 = sum (ends as b), 2 = ancilla (a).
    """
    _check_bits(c_out, sum_bit)
    builder = CircuitBuilder(3)
    builder.prepare_value([0, 1], 2 * c_out + sum_bit)
    builder.append(full_unadder_gate(0, 1, 2))
    builder.add_register("c_in", [0]).add_register("b", [1]).add_register("a", [2])
    return builder.build()


def append_rcu(
    builder: CircuitBuilder,
    carry: int,
    sum_wires: Sequence[int],
    ancillas: Sequence[int],
) -> None:
    """Chain full-unadders MSB-first over ``sum_wires``.

    ``carry`` ends as the final ``c_in``, ``sum_wires`` as ``b`` and
    ``ancillas`` as ``a`` (all MSB-first).
    """
    if len(sum_wires) != len(ancillas):
        raise ValueError("need one ancilla per sum bit")
    for s, anc in zip(sum_wires, ancillas):
        builder.append(full_unadder_gate(carry, s, anc))


@dataclass(frozen=True)
class RCULayout:
    n_bits: int
    carry: int
    sum_wires: tuple[int, ...]
    ancillas: tuple[int, ...]

    @property
    def num_wires(self) -> int:
        return 2 * self.n_bits + 1


def rcu_layout(n_bits: int) -> RCULayout:
    return RCULayout(
        n_bits,
        carry=0,
        sum_wires=tuple(range(1, n_bits + 1)),
        ancillas=tuple(range(n_bits + 1, 2 * n_bits + 1)),
    )


def build_rcu(n_bits: int, sum_value: int) -> Circuit:
    """``n_bits``-bit ripple-carry unadder with ``sum_value`` loaded.

    Registers: ``a`` (ancillas), ``b`` (sum wires), ``c_in`` (carry wire).
    """
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    if not 0 <= sum_value < (1 << n_bits):
        raise ValueError(f"sum {sum_value} does not fit in {n_bits} bits")
    lay = rcu_layout(n_bits)
    builder = CircuitBuilder(lay.num_wires)
    builder.prepare_value(lay.sum_wires, sum_value)
    append_rcu(builder, lay.carry, lay.sum_wires, lay.ancillas)
    builder.add_register("a", lay.ancillas)
    builder.add_register("b", lay.sum_wires)
    builder.add_register("c_in", (lay.carry,))
    return builder.build()


@dataclass
class UnaddResult:
    sum_value: int
    n_bits: int
    mode: str
    triples: list[Triple]
    # exact: probability per triple; sample: shot count per triple
    weights: dict[Triple, float] = field(default_factory=dict)
    shots: Optional[int] = None

    def as_set(self) -> set[Triple]:
        return set(self.triples)


def decode_triples(state: QuantumState, circuit: Circuit, tol: float = 1e-10):
    idx, amps = state.nonzero(tol)
    regs = read_registers(idx, circuit.registers)
    probs = np.abs(amps) ** 2
    weights: dict[Triple, float] = {}
    for a, b, c, p in zip(
        regs["a"].tolist(), regs["b"].tolist(), regs["c_in"].tolist(), probs.tolist()
    ):
        t = Triple(a, b, c)
        weights[t] = weights.get(t, 0.0) + p
    return weights


def unadd(
    sum_value: int,
    n_bits: int,
    mode: str = "exact",
    shots: Optional[int] = None,
    seed: int = 0,
    backend: str = "sparse",
) -> UnaddResult:
    """Every ``(a, b, c_in)`` the ripple-carry unadder produces for ``sum_value``."""
    circuit = build_rcu(n_bits, sum_value)
    state = run(circuit, backend)
    if mode == "exact":
        weights = decode_triples(state, circuit)
        return UnaddResult(sum_value, n_bits, mode, sorted(weights), weights)
    if mode == "sample":
        if shots is None:
            raise ValueError("sample mode needs a shot count")
        res = sample(state, {k: circuit.registers[k] for k in ("a", "b", "c_in")}, shots, seed)
        counts = {Triple(*k): v for k, v in res.counts.items()}
        return UnaddResult(sum_value, n_bits, mode, sorted(counts), counts, shots)
    raise ValueError(f"unknown mode {mode!r}")
