"""Immutable circuit description plus a small builder."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .gates import ControlSpec, Gate, h, mcx, ry, x


@dataclass(frozen=True)
class Circuit:
    """Wire count, ordered gates and named classical registers.

    Register wires are listed most significant bit first. Wire ``i`` is
    bit ``i`` of a basis index.
    """

    num_wires: int
    gates: tuple[Gate, ...] = ()
    registers: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    initial_state: int = 0

    def __post_init__(self) -> None:
        if self.num_wires < 1:
            raise ValueError("circuit needs at least one wire")
        gates = tuple(self.gates)
        for g in gates:
            bad = [w for w in g.wires if w >= self.num_wires]
            if bad:
                raise ValueError(
                    f"{g!r} references wire(s) {bad} outside 0..{self.num_wires - 1}"
                )
        regs = {name: tuple(int(w) for w in ws) for name, ws in self.registers.items()}
        seen: dict[int, str] = {}
        for name, ws in regs.items():
            for w in ws:
                if not 0 <= w < self.num_wires:
                    raise ValueError(f"register {name!r} uses invalid wire {w}")
                if w in seen:
                    raise ValueError(
                        f"wire {w} appears in registers {seen[w]!r} and {name!r}"
                    )
                seen[w] = name
        if not 0 <= self.initial_state < (1 << self.num_wires):
            raise ValueError("initial_state out of range")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "registers", MappingProxyType(regs))

    @property
    def register_names(self) -> tuple[str, ...]:
        return tuple(self.registers)


class CircuitBuilder:
    """Mutable accumulator that produces a :class:`Circuit`."""

    def __init__(self, num_wires: int):
        self.num_wires = num_wires
        self._gates: list[Gate] = []
        self._registers: dict[str, tuple[int, ...]] = {}

    def append(self, gate: Gate) -> "CircuitBuilder":
        self._gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "CircuitBuilder":
        self._gates.extend(gates)
        return self

    def x(self, target: int, controls: Sequence[ControlSpec] = ()) -> "CircuitBuilder":
        return self.append(x(target, controls))

    def h(self, target: int, controls: Sequence[ControlSpec] = ()) -> "CircuitBuilder":
        return self.append(h(target, controls))

    def ry(
        self, theta: float, target: int, controls: Sequence[ControlSpec] = ()
    ) -> "CircuitBuilder":
        return self.append(ry(theta, target, controls))

    def mcx(self, controls: Sequence[ControlSpec], target: int) -> "CircuitBuilder":
        return self.append(mcx(controls, target))

    def prepare_value(self, wires: Sequence[int], value: int) -> "CircuitBuilder":
        """X gates loading ``value`` onto ``wires`` (MSB first)."""
        width = len(wires)
        if not 0 <= value < (1 << width):
            raise ValueError(f"value {value} does not fit in {width} wire(s)")
        for pos, wire in enumerate(wires):
            if (value >> (width - 1 - pos)) & 1:
                self.x(wire)
        return self

    def add_register(self, name: str, wires: Sequence[int]) -> "CircuitBuilder":
        if name in self._registers:
            raise ValueError(f"duplicate register {name!r}")
        self._registers[name] = tuple(wires)
        return self

    def build(self) -> Circuit:
        return Circuit(self.num_wires, tuple(self._gates), dict(self._registers))
