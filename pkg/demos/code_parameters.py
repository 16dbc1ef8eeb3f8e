"""
Distance of the measured surface codes
======================================

For an n x n lattice the code has (n^2 + 1) / 2 data qubits, one logical
qubit and distance (n + 1) / 2. Distances are found by exhaustive search over
Paulis of increasing weight.
"""

import time

from surfmbqc.codes import centralizer_table, code_parameters, logical_operators
from surfmbqc.measurement import run_pipeline

for n in (3, 5, 7):
    t0 = time.perf_counter()
    code = run_pipeline(n).code
    params = code_parameters(code)
    dt = time.perf_counter() - t0
    print(f"{n}x{n}: {params}  corrects {params.correctable}  ({dt:.2f}s)")

# the centralizer table lists each logical operator and its products with the
# generators; its minimum weight is an upper bound on the distance
code = run_pipeline(5).code
pairs = logical_operators(code)
table = centralizer_table(code, pairs)
for p, w in table[:3]:
    print(f"{w:2d}  {p}")
print("minimum weight in table:", min(w for _, w in table))
