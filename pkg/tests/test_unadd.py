import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unop.oracle import Triple, unadd_oracle
from unop.qsim import run, support
from unop.qsim.gates import unitarity_error
from unop.unadd import (
    build_full_unadder_circuit,
    build_full_unadder_gate_circuit,
    build_rcu,
    full_unadder_gate,
    full_unadder_matrix,
    unadd,
)
from unop.verify import TRUTH_TABLE, circuit_distribution, distribution_gap, matrix_distribution

S2, S3, S6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)

# transcribed row by row from the published 8x8 matrix
PUBLISHED = np.array([
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1 / S2, 1 / S3, -1 / S6, 0, 0, 0, 0],
    [0, -1 / S2, 1 / S3, -1 / S6, 0, 0, 0, 0],
    [0, 0, 0, 0, 1 / S3, 1 / S2, 0, -1 / S6],
    [0, 0, 1 / S3, 2 / S6, 0, 0, 0, 0],
    [0, 0, 0, 0, 1 / S3, -1 / S2, 0, -1 / S6],
    [0, 0, 0, 0, 1 / S3, 0, 0, 2 / S6],
    [0, 0, 0, 0, 0, 0, 1, 0],
])


def test_matrix_matches_published_entries():
    np.testing.assert_allclose(full_unadder_matrix(), PUBLISHED, atol=1e-12, rtol=0)


def test_matrix_unitary():
    assert unitarity_error(full_unadder_matrix()) < 1e-12


def test_matrix_columns():
    m = full_unadder_matrix()
    assert np.flatnonzero(m[:, 0]).tolist() == [0]
    assert np.flatnonzero(m[:, 2]).tolist() == [1, 2, 4]
    np.testing.assert_allclose(m[[1, 2, 4], 2], 1 / S3)
    assert np.flatnonzero(m[:, 4]).tolist() == [3, 5, 6]
    np.testing.assert_allclose(m[[3, 5, 6], 4], 1 / S3)
    assert np.flatnonzero(m[:, 6]).tolist() == [7]


@pytest.mark.parametrize("inp", list(TRUTH_TABLE))
def test_gate_realizes_truth_table(inp):
    got = circuit_distribution(build_full_unadder_gate_circuit(*inp))
    assert distribution_gap(got, TRUTH_TABLE[inp]) < 1e-10


@pytest.mark.parametrize("inp", list(TRUTH_TABLE))
@pytest.mark.parametrize("backend", ["dense", "sparse"])
def test_circuit_realizes_truth_table(inp, backend):
    got = circuit_distribution(build_full_unadder_circuit(*inp), backend)
    assert distribution_gap(got, TRUTH_TABLE[inp]) < 1e-10


@pytest.mark.parametrize("inp", list(TRUTH_TABLE))
def test_circuit_matches_matrix(inp):
    got = circuit_distribution(build_full_unadder_circuit(*inp))
    assert distribution_gap(got, matrix_distribution(full_unadder_matrix(), *inp)) < 1e-10


def test_circuit_full_input_gives_111():
    state = run(build_full_unadder_circuit(1, 1))
    (idx, amp), = support(state)
    assert idx == 0b11111
    assert abs(amp) == pytest.approx(1.0)


def test_circuit_branch_gives_three_thirds():
    got = support(run(build_full_unadder_circuit(0, 1)))
    assert len(got) == 3
    for _, amp in got:
        assert abs(abs(amp) ** 2 - 1 / 3) < 1e-10


def test_circuit_uses_five_wires_and_expected_gate_kinds():
    c = build_full_unadder_circuit(0, 1)
    assert c.num_wires == 5
    assert {g.name for g in c.gates} == {"x", "ry", "h"}
    assert any(g.name == "ry" and g.controls for g in c.gates)
    assert any(g.name == "h" and g.controls for g in c.gates)


def test_full_unadder_gate_wire_order():
    g = full_unadder_gate(4, 2, 7)
    assert g.targets == (4, 2, 7)


def test_bad_input_bits():
    with pytest.raises(ValueError):
        build_full_unadder_circuit(2, 0)


# --- RCU -------------------------------------------------------------------

def test_rcu_sum_six_layout():
    c = build_rcu(3, 6)
    assert c.num_wires == 7
    preps = [g for g in c.gates if g.name == "x"]
    stages = [g for g in c.gates if g.name == "unadd_opt"]
    # 110: MSB and middle sum wires set
    assert [g.targets[0] for g in preps] == [1, 2]
    assert [g.targets for g in stages] == [(0, 1, 4), (0, 2, 5), (0, 3, 6)]
    assert dict(c.registers) == {"a": (4, 5, 6), "b": (1, 2, 3), "c_in": (0,)}


def test_rcu_n1_sum0():
    assert unadd(0, 1).as_set() == {Triple(0, 0, 0)}


def test_rcu_n2_sum3_cardinality():
    assert len(unadd(3, 2).triples) == 7


def test_unadd_three_two_bits():
    assert unadd(3, 2).as_set() == {
        (0, 3, 0), (1, 2, 0), (2, 1, 0), (3, 0, 0), (0, 2, 1), (1, 1, 1), (2, 0, 1)
    }


def test_unadd_zero_four_bits():
    assert unadd(0, 4).as_set() == {Triple(0, 0, 0)}


def test_unadd_range_errors():
    with pytest.raises(ValueError):
        build_rcu(3, 8)
    with pytest.raises(ValueError):
        unadd(-1, 3)


def test_exact_probabilities_sum_to_one():
    res = unadd(6, 3)
    assert sum(res.weights.values()) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 6), data=st.data(), backend=st.sampled_from(["dense", "sparse"]))
def test_unadd_equals_oracle(n, data, backend):
    N = data.draw(st.integers(0, (1 << n) - 1))
    res = unadd(N, n, backend=backend)
    assert res.as_set() == unadd_oracle(N, n)
    assert all(t.a + t.b + t.c_in == N for t in res.triples)


@pytest.mark.parametrize("n, N", [(3, 6), (4, 11), (5, 31)])
def test_stage_branching_is_uniform(n, N):
    # each full-unadder stage splits a branch into thirds; intermediate
    # probabilities are therefore products of 1/3 only
    res = unadd(N, n)
    for p in res.weights.values():
        k = round(-np.log(p) / np.log(3))
        assert p == pytest.approx(3.0 ** -k, rel=1e-9)


def test_unadd_sample_mode():
    res = unadd(3, 2, mode="sample", shots=20_000, seed=11)
    assert res.as_set() == unadd_oracle(3, 2)
    assert sum(res.weights.values()) == 20_000
    again = unadd(3, 2, mode="sample", shots=20_000, seed=11)
    assert again.weights == res.weights


def test_unadd_sample_needs_shots():
    with pytest.raises(ValueError):
        unadd(3, 2, mode="sample")
