"""Classical brute-force references. Nothing here touches the simulator."""

from __future__ import annotations

from typing import NamedTuple


class AdderResult(NamedTuple):
    sum_bit: int
    carry_out: int


class Triple(NamedTuple):
    a: int
    b: int
    c_in: int


class FactorPair(NamedTuple):
    x: int
    y: int


def full_adder(a: int, b: int, c_in: int) -> AdderResult:
    for bit in (a, b, c_in):
        if bit not in (0, 1):
            raise ValueError(f"full_adder inputs must be bits, got {(a, b, c_in)}")
    total = a + b + c_in
    return AdderResult(total % 2, total // 2)


def unadd_oracle(sum_value: int, n_bits: int) -> set[Triple]:
    """All ``(a, b, c_in)`` with ``a + b + c_in == sum_value`` and ``a, b < 2**n_bits``."""
    if not 0 <= sum_value < (1 << n_bits):
        raise ValueError(f"sum {sum_value} does not fit in {n_bits} bits")
    limit = 1 << n_bits
    out = set()
    for c_in in (0, 1):
        for a in range(sum_value - c_in + 1):
            b = sum_value - c_in - a
            if a < limit and b < limit:
                out.add(Triple(a, b, c_in))
    return out


def factor_pairs_oracle(product: int, n_bits: int) -> set[FactorPair]:
    if not 0 <= product < (1 << (2 * n_bits)):
        raise ValueError(f"product {product} does not fit in {2 * n_bits} bits")
    limit = 1 << n_bits
    return {
        FactorPair(x, y)
        for x in range(limit)
        for y in range(limit)
        if x * y == product
    }
