"""
The five-qubit perfect code
===========================

Four generators give 16 syndromes, exactly enough for the identity and the
15 single-qubit errors. The code is therefore perfect.
"""

from surfmbqc.cli import load_builtin
from surfmbqc.codes import (
    code_parameters,
    is_detectable,
    knill_laflamme_check,
    perfect_code_check,
    single_qubit_errors,
    syndrome_string,
)
from surfmbqc.pauli import PauliOperator

code, (pair,) = load_builtin("five-qubit")
print("generators:", code.strings())
print("logicals:", pair.x_logical, pair.z_logical)
print("parameters:", code_parameters(code))

# syndrome table: every weight-0 or weight-1 error gets its own bit string
for e in single_qubit_errors(5):
    print(f"{e.letters}  {syndrome_string(e, code)}")
print("perfect:", perfect_code_check(code))

# a weight-3 error that commutes with everything but is not a stabilizer
e = PauliOperator.from_string("YZYII")
print(f"{e}: syndrome {syndrome_string(e, code)}, detectable {is_detectable(e, code)}")

# the Knill-Laflamme condition on explicit codewords
print("Knill-Laflamme over single-qubit errors:", knill_laflamme_check(code, single_qubit_errors(5)))
