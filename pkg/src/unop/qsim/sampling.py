"""Seeded shot sampling from a simulated state."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .state import QuantumState, read_registers

SHOT_CHUNK = 1 << 20


@dataclass(frozen=True)
class ShotResult:
    """Counts keyed by register-value tuples in ``registers`` order."""

    registers: tuple[str, ...]
    counts: Mapping[tuple[int, ...], int]
    total_shots: int

    def frequencies(self) -> dict[tuple[int, ...], float]:
        return {k: v / self.total_shots for k, v in self.counts.items()}

    def as_records(self) -> list[dict[str, int]]:
        rows = []
        for key in sorted(self.counts):
            row = dict(zip(self.registers, key))
            row["count"] = self.counts[key]
            rows.append(row)
        return rows


def chunk_generators(seed: int, shots: int, chunk: int = SHOT_CHUNK):
    """One Philox stream per shot chunk, derived from the 64-bit master seed.

    Chunk ``i`` always gets the same stream, so counts do not depend on how
    chunks are scheduled.
    """
    if not 0 <= seed < (1 << 64):
        raise ValueError("seed must be an unsigned 64-bit integer")
    n_chunks = -(-shots // chunk)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, ss in enumerate(children):
        size = min(chunk, shots - i * chunk)
        yield size, np.random.Generator(np.random.Philox(ss))


def sample(
    state: QuantumState,
    layout: Mapping[str, Sequence[int]],
    shots: int,
    seed: int,
) -> ShotResult:
    if shots < 1:
        raise ValueError("shots must be >= 1")
    indices, amps = state.nonzero()
    probs = np.abs(amps) ** 2
    probs = probs / probs.sum()

    hits = np.zeros(indices.size, dtype=np.int64)
    for size, rng in chunk_generators(seed, shots):
        hits += rng.multinomial(size, probs)

    seen = hits > 0
    names = tuple(layout)
    values = read_registers(indices[seen], layout)
    counts: dict[tuple[int, ...], int] = {}
    columns = [values[n].tolist() for n in names]
    for key, c in zip(zip(*columns), hits[seen].tolist()):
        counts[key] = counts.get(key, 0) + c
    return ShotResult(names, dict(sorted(counts.items())), shots)
