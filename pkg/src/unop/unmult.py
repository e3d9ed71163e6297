"""n-bit unmultiplier: chained ripple-carry unadders with qubit feedback for y.

Wire layout (all registers MSB-first)::

    product   p_0 .. p_{2n-1}      wires 0 .. 2n-1
    x_i       n wires per RCU      wires 2n .. 2n + n*n - 1
    y         y_0 .. y_{n-1}       last n wires

RCU ``i`` (0-based) uses product wire ``p_i`` as its carry and
``p_{i+1} .. p_{i+n}`` as its sum, so its ``b`` output lands where the next
RCU expects its upper sum bits. After the last RCU, ``p_0 .. p_{n-1}`` hold
the ``c_in`` bits and ``p_n .. p_{2n-1}`` hold ``const0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .oracle import FactorPair
from .qsim import Circuit, CircuitBuilder, run, sample
from .qsim.state import read_registers
from .unadd import append_rcu

REJECT_REASONS = ("const0", "c_in", "x_consistency")


@dataclass(frozen=True)
class UnmultLayout:
    n_bits: int
    product_wires: tuple[int, ...]
    x_registers: tuple[tuple[int, ...], ...]
    y_wires: tuple[int, ...]

    @property
    def num_wires(self) -> int:
        return len(self.product_wires) + sum(map(len, self.x_registers)) + len(self.y_wires)

    @property
    def c_in_wires(self) -> tuple[int, ...]:
        return self.product_wires[: self.n_bits]

    @property
    def const0_wires(self) -> tuple[int, ...]:
        return self.product_wires[self.n_bits :]

    def registers(self) -> dict[str, tuple[int, ...]]:
        regs: dict[str, tuple[int, ...]] = {}
        for i, wire in enumerate(self.c_in_wires):
            regs[f"c_in_x{i}"] = (wire,)
        for i, wires in enumerate(self.x_registers):
            regs[f"x{i}"] = wires
        regs["y"] = self.y_wires
        regs["const0"] = self.const0_wires
        return regs


def unmult_layout(n_bits: int) -> UnmultLayout:
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    n = n_bits
    product = tuple(range(2 * n))
    x_regs = tuple(
        tuple(range(2 * n + i * n, 2 * n + (i + 1) * n)) for i in range(n)
    )
    y = tuple(range(2 * n + n * n, 3 * n + n * n))
    return UnmultLayout(n, product, x_regs, y)


def build_unmultiplier(n_bits: int, product: int) -> tuple[Circuit, UnmultLayout]:
    lay = unmult_layout(n_bits)
    n = n_bits
    if not 0 <= product < (1 << (2 * n)):
        raise ValueError(f"product {product} does not fit in {2 * n} bits")
    builder = CircuitBuilder(lay.num_wires)
    builder.prepare_value(lay.product_wires, product)
    p = lay.product_wires
    for i in range(n):
        y_i = lay.y_wires[i]
        x_i = lay.x_registers[i]
        builder.x(y_i)
        append_rcu(builder, p[i], p[i + 1 : i + 1 + n], x_i)
        # RCU idle (a-output all zero) means this y bit was 0
        builder.mcx([(w, False) for w in x_i], y_i)
    for name, wires in lay.registers().items():
        builder.add_register(name, wires)
    return builder.build(), lay


@dataclass(frozen=True)
class RawOutcome:
    c_in: tuple[int, ...]
    x: tuple[int, ...]
    y: int
    const0: int


@dataclass(frozen=True)
class Rejection:
    reason: str


def postprocess(outcome: RawOutcome) -> Union[FactorPair, Rejection]:
    """Keep only outcomes that are valid inputs to the classical multiplier."""
    if outcome.const0 != 0:
        return Rejection("const0")
    if any(outcome.c_in):
        return Rejection("c_in")
    nonzero = {v for v in outcome.x if v != 0}
    if len(nonzero) > 1:
        return Rejection("x_consistency")
    x = nonzero.pop() if nonzero else 0
    return FactorPair(x, outcome.y)


def decode_outcomes(regs: dict[str, np.ndarray], n_bits: int) -> list[RawOutcome]:
    cols = {k: v.tolist() for k, v in regs.items()}
    out = []
    for row in range(len(cols["y"])):
        out.append(
            RawOutcome(
                c_in=tuple(cols[f"c_in_x{i}"][row] for i in range(n_bits)),
                x=tuple(cols[f"x{i}"][row] for i in range(n_bits)),
                y=cols["y"][row],
                const0=cols["const0"][row],
            )
        )
    return out


@dataclass
class UnmultResult:
    product: int
    n_bits: int
    mode: str
    pairs: list[FactorPair]
    # exact: probability mass per pair; sample: shot count per pair
    weights: dict[FactorPair, float]
    post_selection_probability: float
    rejections: dict[str, float] = field(default_factory=dict)
    shots: Optional[int] = None

    def as_set(self) -> set[FactorPair]:
        return set(self.pairs)


def unmultiply(
    product: int,
    n_bits: int,
    mode: str = "exact",
    shots: Optional[int] = None,
    seed: int = 0,
    backend: str = "sparse",
    tol: float = 1e-10,
) -> UnmultResult:
    """Factor pairs ``(x, y)`` of ``product`` recovered by the unmultiplier.

    Rejected weight is tallied per failed predicate in ``rejections``.
    """
    circuit, lay = build_unmultiplier(n_bits, product)
    state = run(circuit, backend)
    if mode == "exact":
        idx, amps = state.nonzero(tol)
        outcomes = decode_outcomes(read_registers(idx, circuit.registers), n_bits)
        weights_list = (np.abs(amps) ** 2).tolist()
        total = float(sum(weights_list))
    elif mode == "sample":
        if shots is None:
            raise ValueError("sample mode needs a shot count")
        res = sample(state, circuit.registers, shots, seed)
        names = res.registers
        keys = list(res.counts)
        regs = {
            name: np.array([k[j] for k in keys], dtype=np.int64)
            for j, name in enumerate(names)
        }
        outcomes = decode_outcomes(regs, n_bits)
        weights_list = [res.counts[k] for k in keys]
        total = float(shots)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    weights: Counter = Counter()
    rejections = {r: 0 for r in REJECT_REASONS}
    for outcome, w in zip(outcomes, weights_list):
        verdict = postprocess(outcome)
        if isinstance(verdict, Rejection):
            rejections[verdict.reason] += w
        else:
            weights[verdict] += w
    accepted = float(sum(weights.values()))
    return UnmultResult(
        product,
        n_bits,
        mode,
        sorted(weights),
        dict(sorted(weights.items())),
        accepted / total,
        rejections,
        shots,
    )
