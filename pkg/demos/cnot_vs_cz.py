"""
Gate-model and measurement-based preparation
============================================

The usual gate-model cycle entangles data and measure qubits with CNOTs. The
cluster-state route uses CZs instead. After a Hadamard on every data qubit the
two give the same stabilizer group. Without it, X and Z are exchanged.
"""

from surfmbqc.measurement import run_pipeline
from surfmbqc.pauli import PauliOperator, StabilizerSet

cz = run_pipeline(3, "cz")
raw = run_pipeline(3, "cz", frame=False)
cnot = run_pipeline(3, "cnot")

print("CNOT code:       ", cnot.code.strings())
print("CZ code (framed):", cz.code.strings())
print("CZ code (raw):   ", raw.code.strings())
print("framed CZ == CNOT:", cz.output.same_group(cnot.output))
print("raw CZ == CNOT:", raw.output.same_group(cnot.output))

swapped = StabilizerSet(raw.output.n, tuple(PauliOperator(p.n, p.z, p.x, p.phase) for p in raw.output))
print("raw CZ with X and Z swapped == CNOT:", swapped.same_group(cnot.output))
