"""Exit criteria, one test per criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists
one PASS/FAIL line per criterion.
"""

import json
import platform
import subprocess
import sys
import time

import numpy as np
import pytest

from unop import cli
from unop.oracle import factor_pairs_oracle, unadd_oracle
from unop.qsim import run, sample
from unop.qsim.gates import unitarity_error
from unop.unadd import (
    build_full_unadder_circuit,
    build_full_unadder_gate_circuit,
    full_unadder_matrix,
    unadd,
)
from unop.unmult import build_unmultiplier, unmultiply
from unop.verify import TRUTH_TABLE, circuit_distribution, distribution_gap, matrix_distribution

INPUTS = [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.acceptance(1, "gate fidelity: unitary < 1e-12, truth table exact / 1e-10")
def test_gate_fidelity():
    m = full_unadder_matrix()
    assert unitarity_error(m) < 1e-12
    for inp in INPUTS:
        got = matrix_distribution(m, *inp)
        want = TRUTH_TABLE[inp]
        assert set(got) == set(want)
        for key, p in want.items():
            if p == 1.0:
                assert got[key] == 1.0
            else:
                assert abs(got[key] - 1 / 3) < 1e-10


@pytest.mark.acceptance(2, "realization equivalence: 5-wire circuit == 3-wire gate within 1e-10")
def test_realization_equivalence():
    for inp in INPUTS:
        circ = circuit_distribution(build_full_unadder_circuit(*inp))
        gate = circuit_distribution(build_full_unadder_gate_circuit(*inp))
        assert set(circ) == set(gate)
        assert distribution_gap(circ, gate) < 1e-10


@pytest.mark.acceptance(3, "sampled branching inputs at 1e6 shots within 0.3333 +/- 0.005, seeded")
@pytest.mark.parametrize("builder", [build_full_unadder_circuit, build_full_unadder_gate_circuit])
@pytest.mark.parametrize("inp", [(0, 1), (1, 0)])
def test_sampling_reproduction(builder, inp):
    circuit = builder(*inp)
    layout = {k: circuit.registers[k] for k in ("c_in", "b", "a")}
    state = run(circuit)
    res = sample(state, layout, 10**6, seed=2024)
    assert set(res.counts) == set(TRUTH_TABLE[inp])
    for freq in res.frequencies().values():
        assert abs(freq - 0.3333) <= 0.005
    assert sample(state, layout, 10**6, seed=2024) == res


@pytest.mark.acceptance(4, "RCU == oracle for all n <= 8, N < 2^n, cardinality 2N+1")
def test_rcu_oracle_equivalence():
    t0 = time.perf_counter()
    for n in range(1, 9):
        for N in range(1 << n):
            got = unadd(N, n, backend="sparse").as_set()
            assert got == unadd_oracle(N, n), (n, N)
            assert len(got) == (2 * N + 1 if N >= 1 else 1)
    assert time.perf_counter() - t0 < 300


@pytest.mark.acceptance(5, "RCU stretch: n = 19, N = 2^19 - 1 gives 1,048,575 triples (sparse)")
def test_rcu_scaling_stretch():
    t0 = time.perf_counter()
    res = unadd((1 << 19) - 1, 19, backend="sparse")
    elapsed = time.perf_counter() - t0
    print(f"\nn=19 sparse unaddition: {elapsed:.1f} s on {platform.processor() or platform.machine()}")
    assert len(res.triples) == 1_048_575
    assert elapsed < 3600


@pytest.mark.acceptance(6, "unmultiplier == oracle for n = 3, p in [1, 16); p = 0 sound")
@pytest.mark.parametrize("p", range(16))
def test_unmultiplier_oracle_equivalence(p):
    res = unmultiply(p, 3, backend="sparse")
    if p >= 1:
        assert res.as_set() == factor_pairs_oracle(p, 3)
    else:
        assert all(x * y == 0 for x, y in res.pairs)


@pytest.mark.acceptance(7, "unmultiplier wire count n^2 + 3n for n in 1..4")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wire_count(n):
    circuit, _ = build_unmultiplier(n, 0)
    assert circuit.num_wires == n * n + 3 * n


SAMPLE_COMMANDS = [
    ["unadd", "--bits", "4", "--value", "9", "--mode", "sample", "--shots", "200000", "--seed", "42"],
    ["unmul", "--bits", "3", "--value", "6", "--mode", "sample", "--shots", "100000", "--seed", "7"],
    ["verify", "--shots", "100000", "--seed", "1"],
]


@pytest.mark.acceptance(8, "determinism: identical seeds give byte-identical JSON")
@pytest.mark.parametrize("argv", SAMPLE_COMMANDS, ids=lambda a: a[0])
def test_determinism(argv):
    outs = [
        subprocess.run(
            [sys.executable, "-m", "unop", *argv, "--format", "json"],
            capture_output=True, check=True,
        ).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["command"] == argv[0]
