from __future__ import annotations

from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SINGLE, dense, paulis
from surfmbqc.lattice import PLUS, ZERO, CliffordCircuit, cluster_stabilizers, cz_entangler, square_lattice
from surfmbqc.oracle import (
    CapacityError,
    ZeroNormError,
    amplitudes_json,
    apply_gate,
    apply_pauli,
    codewords,
    oracle_capacity,
    pauli_expectation,
    prepare,
    project,
    project_pauli,
)
from surfmbqc.pauli import CliffordGate, DimensionError, PauliOperator, StabilizerSet

P = PauliOperator.from_string
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def kron(*ms):
    return reduce(np.kron, ms)


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


class TestGates:
    def test_cnot_non_adjacent(self):
        I, X = SINGLE["I"], SINGLE["X"]
        u = kron(P0, I, I) + kron(P1, I, X)
        psi = random_state(3, 0)
        assert np.allclose(apply_gate(psi, CliffordGate("CNOT", (0, 2))), u @ psi)

    def test_cnot_reversed(self):
        I, X = SINGLE["I"], SINGLE["X"]
        u = kron(I, P0) + kron(X, P1)
        psi = random_state(2, 1)
        assert np.allclose(apply_gate(psi, CliffordGate("CNOT", (1, 0))), u @ psi)

    def test_single_qubit(self):
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        psi = random_state(3, 2)
        assert np.allclose(apply_gate(psi, CliffordGate("H", (1,))), kron(SINGLE["I"], h, SINGLE["I"]) @ psi)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            apply_gate(random_state(2, 0), CliffordGate("H", (2,)))


class TestPauli:
    @settings(max_examples=150, deadline=None)
    @given(paulis(max_n=5), st.integers(0, 1000))
    def test_apply_pauli_matches_matrix(self, p, seed):
        psi = random_state(p.n, seed)
        assert np.allclose(apply_pauli(psi, p), dense(p) @ psi)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply_pauli(random_state(2, 0), P("XXX"))

    def test_expectations(self):
        assert pauli_expectation(prepare([ZERO]), P("Z")) == pytest.approx(1)
        assert pauli_expectation(prepare([PLUS]), P("X")) == pytest.approx(1)
        assert pauli_expectation(prepare([PLUS]), P("-X")) == pytest.approx(-1)
        assert pauli_expectation(prepare([ZERO]), P("X")) == pytest.approx(0)

    def test_bell_state(self):
        psi = prepare([PLUS, ZERO], CliffordCircuit(2, (CliffordGate("CNOT", (0, 1)),)))
        assert np.allclose(psi, np.array([1, 0, 0, 1]) / np.sqrt(2))
        for s in ["XX", "ZZ", "-YY"]:
            assert pauli_expectation(psi, P(s)) == pytest.approx(1)


class TestProjection:
    def test_forced_outcomes(self):
        psi = prepare([PLUS])
        assert np.allclose(project(psi, 0, "Z"), [1, 0])
        assert np.allclose(project(psi, 0, "Z", -1), [0, 1])
        with pytest.raises(ZeroNormError):
            project(prepare([ZERO]), 0, "Z", -1)
        with pytest.raises(ValueError):
            project(psi, 0, "Z", 0)

    def test_project_pauli(self):
        out = project_pauli(prepare([ZERO, ZERO]), P("XX"))
        assert np.allclose(out, np.array([1, 0, 0, 1]) / np.sqrt(2))


class TestPrepare:
    def test_cluster_state(self):
        g, _ = square_lattice(3)
        psi = prepare([PLUS] * 9, cz_entangler(g))
        for k in cluster_stabilizers(g):
            assert pauli_expectation(psi, k) == pytest.approx(1, abs=1e-12)
        assert np.linalg.norm(psi) == pytest.approx(1)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            prepare(["minus"])
        with pytest.raises(ValueError):
            prepare([PLUS], CliffordCircuit(2, ()))

    def test_capacity(self, monkeypatch):
        monkeypatch.delenv("SURFMBQC_ORACLE_CAPACITY", raising=False)
        assert oracle_capacity() == 20
        assert oracle_capacity(3) == 3
        with pytest.raises(CapacityError):
            prepare([PLUS] * 4, capacity_override=3)
        monkeypatch.setenv("SURFMBQC_ORACLE_CAPACITY", "2")
        assert oracle_capacity() == 2
        with pytest.raises(CapacityError):
            prepare([PLUS] * 3)


class TestCodewords:
    @pytest.mark.parametrize(
        "gens", [["ZZI", "IZZ"], ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], ["XXXX", "ZZZZ"]]
    )
    def test_orthonormal_and_stabilized(self, gens):
        s = StabilizerSet.from_strings(gens)
        words = codewords(s)
        k = s.n - s.rank
        assert len(words) == 1 << k
        gram = np.array([[np.vdot(a, b) for b in words] for a in words])
        assert np.allclose(gram, np.eye(len(words)))
        for w in words:
            for g in s:
                assert pauli_expectation(w, g) == pytest.approx(1)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            codewords(StabilizerSet.from_strings(["ZZI", "IZZ"]), capacity=2)

    def test_amplitudes_json(self):
        assert amplitudes_json(prepare([ZERO])) == [[1.0, 0.0], [0.0, 0.0]]
        with pytest.raises(CapacityError):
            amplitudes_json(prepare([ZERO] * 7))
