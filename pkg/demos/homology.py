"""
Logical operators as homology classes
=====================================

Put data qubits on edges, X checks on faces and Z checks on vertices. X-type
logical operators are then 1-cycles that are not face boundaries, and
multiplying by an X check moves a logical within its homology class.
"""

from surfmbqc.codes import logical_operators
from surfmbqc.homology import (
    Chain,
    boundary,
    grid_disc,
    h1_rank,
    homologically_equivalent,
    is_boundary,
    surface_code_complex,
    torus_grid,
)
from surfmbqc.measurement import run_pipeline

print("disc h1:", h1_rank(grid_disc(3, 3)))
print("torus h1:", h1_rank(torus_grid(4)))

cx, data = surface_code_complex(5)
print("surface code complex:", cx.n_vertices, "vertices,", cx.n_edges, "edges,", cx.n_faces, "faces")
print("h1:", h1_rank(cx))

code = run_pipeline(5).code
(pair,) = logical_operators(code)


def chain(bits):
    return Chain.of(1, code.n, [i for i in range(code.n) if (bits >> i) & 1])


xl = chain(pair.x_logical.x)
print("X_L =", pair.x_logical, "cycle:", boundary(xl, cx).is_zero(), "boundary:", is_boundary(xl, cx))

check = next(c for c in code if c.z == 0)
moved = chain(pair.x_logical.x ^ check.x)
print("X_L times", check, "is equivalent:", homologically_equivalent(xl, moved, cx))
