from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from surfmbqc.codes import code_parameters
from surfmbqc.lattice import PLUS, Graph, cluster_stabilizers, cnot_baseline, cz_entangler, square_lattice
from surfmbqc.measurement import (
    ImpossibleOutcomeError,
    Measurement,
    MeasurementArray,
    evolve,
    hadamard_frame,
    local_checks,
    remove_z_qubits,
    restrict_to_data,
    run_pipeline,
    surface_pattern,
    trace_to_jsonl,
)
from surfmbqc.oracle import ZeroNormError, measure_pattern, pauli_expectation, prepare
from surfmbqc.pauli import DimensionError, InvariantError, PauliOperator, StabilizerSet, commutes

P = PauliOperator.from_string

Z_REMOVED_3X3 = ["X0 Z3", "X2 Z5", "Z0 X3 Z4 Z6", "Z3 X4 Z5", "Z2 Z4 X5 Z8", "Z3 X6", "Z5 X8"]


@st.composite
def patterns(draw, n):
    qubits = draw(st.permutations(range(n)))
    k = draw(st.integers(0, n))
    bases = draw(st.lists(st.sampled_from("XYZ"), min_size=k, max_size=k))
    return MeasurementArray.from_pairs(zip(qubits[:k], bases))


class TestPattern:
    def test_surface_pattern(self):
        assert [(m.qubit, m.basis) for m in surface_pattern(3)] == [(1, "Z"), (7, "Z"), (3, "X"), (5, "X")]
        assert len(surface_pattern(5)) == 12

    def test_rejects_duplicates_and_bad_basis(self):
        with pytest.raises(ValueError):
            MeasurementArray.from_pairs([(0, "X"), (0, "Z")])
        with pytest.raises(ValueError):
            Measurement(0, "W")
        with pytest.raises(ValueError):
            Measurement(-1, "X")

    def test_out_of_range(self):
        s = StabilizerSet.from_strings(["XZ", "ZX"])
        with pytest.raises(DimensionError):
            evolve(s, MeasurementArray.from_pairs([(2, "X")]))

    def test_json_roundtrip(self):
        m = surface_pattern(3)
        assert MeasurementArray.from_json(m.to_json()) == m


class TestEvolve:
    def test_z_removal_reproduces_generators(self):
        g, _ = square_lattice(3)
        sub, s = remove_z_qubits(g, {1, 7})
        assert [k.sparse() for k in s] == Z_REMOVED_3X3
        assert sub.vertex_count == 9 and sub.neighbors(1) == []
        out = evolve(cluster_stabilizers(g), MeasurementArray.from_pairs([(1, "Z"), (7, "Z")]))
        assert out.same_group(s)
        for k in s:
            assert out.element(k) == k

    def test_impossible_outcome(self):
        s = StabilizerSet.from_strings(["-Z"])
        with pytest.raises(ImpossibleOutcomeError):
            evolve(s, MeasurementArray.from_pairs([(0, "Z")]))
        # the +1 case is harmless and leaves nothing behind
        assert len(evolve(StabilizerSet.from_strings(["Z"]), MeasurementArray.from_pairs([(0, "Z")]))) == 0

    def test_impossible_outcome_on_graph(self):
        # star 1-0-2: after X0 = +1 the group holds -Y1Y2, so Y1 = Y2 = +1 cannot happen
        g = Graph(3, frozenset({(0, 1), (0, 2)}))
        m = MeasurementArray.from_pairs([(0, "X"), (1, "Y"), (2, "Y")])
        with pytest.raises(ImpossibleOutcomeError):
            evolve(cluster_stabilizers(g), m)
        with pytest.raises(ZeroNormError):
            measure_pattern(prepare([PLUS] * 3, cz_entangler(g)), m)
        after = evolve(cluster_stabilizers(g), MeasurementArray.from_pairs([(0, "X")]))
        assert after.element(P("IYY")) == P("-IYY")

    def test_include_measurements(self):
        s = StabilizerSet.from_strings(["XZ", "ZX"])
        out = evolve(s, MeasurementArray.from_pairs([(0, "Z")]), include_measurements=True)
        assert out.strings() == ["+IX", "+ZI"]

    def test_trace(self):
        g, _ = square_lattice(3)
        trace = []
        evolve(cluster_stabilizers(g), surface_pattern(3), trace=trace)
        assert [r["qubit"] for r in trace] == [1, 7, 3, 5]
        assert all(r["other_letter"] == 0 for r in trace)
        assert trace[-1]["generators"] == 5
        # the first Z measurement anticommutes with the generator of qubit 1 only
        assert trace[0]["anticommuting"] == 1 and trace[0]["products"] == 0
        lines = trace_to_jsonl(trace).splitlines()
        assert len(lines) == 4 and '"step": 0' in lines[0]

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=12).flatmap(lambda g: st.tuples(st.just(g), patterns(g.vertex_count))))
    def test_matches_statevector(self, data):
        g, m = data
        s = cluster_stabilizers(g)
        psi = prepare([PLUS] * g.vertex_count, cz_entangler(g))
        try:
            out = evolve(s, m)
        except ImpossibleOutcomeError:
            with pytest.raises(ZeroNormError):
                measure_pattern(psi, m)
            return
        psi = measure_pattern(psi, m)
        for p in out:
            assert pauli_expectation(psi, p) == pytest.approx(1.0, abs=1e-9)
            assert all(p.letter(q) == "I" for q in m.qubits)
        full = evolve(s, m, include_measurements=True)
        assert full.rank == g.vertex_count

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=12), st.data())
    def test_z_removal_consistency(self, g, data):
        victims = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
        _, s = remove_z_qubits(g, victims)
        out = evolve(cluster_stabilizers(g), MeasurementArray.from_pairs((v, "Z") for v in sorted(victims)))
        assert out.same_group(s)
        for k in s:
            assert out.element(k) == k

    @pytest.mark.parametrize("n", [3, 5])
    def test_order_robustness(self, n):
        g, _ = square_lattice(n)
        s = cluster_stabilizers(g)
        base = evolve(s, surface_pattern(n))
        rng = random.Random(n)
        for _ in range(10):
            ins = list(surface_pattern(n))
            rng.shuffle(ins)
            other = evolve(s, MeasurementArray(tuple(ins)))
            assert other.same_group(base)
            assert all(base.element(p) == p for p in other)


class TestRegister:
    def test_restrict_to_data(self):
        s = StabilizerSet.from_strings(["XIZ", "-IIZ"])
        r, index = restrict_to_data(s, [1])
        assert index == [0, 2]
        assert r.strings() == ["+XZ", "-IZ"]
        with pytest.raises(InvariantError):
            restrict_to_data(s, [2])

    def test_hadamard_frame(self):
        s = StabilizerSet.from_strings(["XZ", "-YI"])
        assert hadamard_frame(s, [0, 1]).strings() == ["+ZX", "+YI"]
        assert hadamard_frame(s, []).strings() == s.strings()

    def test_local_checks(self):
        s = StabilizerSet.from_strings(["XXI", "IZZ", "ZZI"])
        checks = local_checks(s, [[0, 1], [1, 2], [0, 2]])
        assert str(checks[0]) == "+XXI"
        assert str(checks[1]) == "+IZZ"
        assert str(checks[2]) == "+ZIZ"


class TestPipeline:
    def test_3x3_output(self):
        res = run_pipeline(3)
        assert res.data_qubits == [0, 2, 4, 6, 8]
        assert res.restricted.strings() == ["+ZIZZI", "+IZZIZ", "+IXIIX", "+XIXIX", "+XIIXI"]
        assert res.output.strings() == ["+XIXXI", "+IXXIX", "+IZIIZ", "+ZIZIZ", "+ZIIZI"]
        assert res.code.strings() == ["+ZZZII", "+IIZZZ", "+XIXXI", "+IXXIX"]
        assert [str(p) for p in res.logical_state] == ["+IZIIZ"]

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_code_is_surface_code(self, n):
        res = run_pipeline(n)
        data = (n * n + 1) // 2
        assert res.output.n == data
        assert len(res.output) == data and res.output.rank == data
        assert len(res.code) == (n * n - 1) // 2
        res.code.validate()
        # every check is pure X or pure Z with weight 2, 3 or 4
        for c in res.code:
            assert c.x == 0 or c.z == 0
            assert 2 <= c.weight <= 4
        assert len(res.logical_state) == 1

    @pytest.mark.parametrize("n", [3, 5])
    def test_framed_cz_matches_cnot(self, n):
        cz = run_pipeline(n, "cz")
        cnot = run_pipeline(n, "cnot")
        assert cz.output.canonical().generators == cnot.output.canonical().generators
        assert not run_pipeline(n, "cz", frame=False).output.same_group(cnot.output)

    def test_unframed_letter_exchange(self):
        cnot = run_pipeline(3, "cnot").output
        raw = run_pipeline(3, "cz", frame=False).output
        swapped = StabilizerSet(raw.n, tuple(PauliOperator(p.n, p.z, p.x, p.phase) for p in raw))
        assert swapped.same_group(cnot)

    def test_cnot_initial_is_baseline(self):
        assert run_pipeline(3, "cnot").initial.generators == cnot_baseline(3).generators

    def test_bad_entangler(self):
        with pytest.raises(ValueError):
            run_pipeline(3, "swap")

    def test_parameters(self):
        assert str(code_parameters(run_pipeline(3).code)) == "[[5,1,2]]"

    def test_oracle_agrees_on_pipeline(self):
        res = run_pipeline(3)
        psi = measure_pattern(prepare([PLUS] * 9, cz_entangler(res.graph)), res.pattern)
        vals = [pauli_expectation(psi, p) for p in res.evolved]
        assert np.allclose(vals, 1.0, atol=1e-9)
        for p in res.evolved:
            assert all(commutes(p, m) for m in res.pattern.operators(9))
