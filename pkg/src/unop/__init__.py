"""Unaddition and unmultiplication circuits on a small quantum simulator."""

from .oracle import FactorPair, Triple, factor_pairs_oracle, full_adder, unadd_oracle
from .unadd import (
    build_full_unadder_circuit,
    build_rcu,
    full_unadder_matrix,
    unadd,
)

__version__ = "0.1.0"
