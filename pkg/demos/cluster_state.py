"""
Cluster states on a square lattice
==================================

A cluster state is fixed by one generator per vertex: X on the vertex and Z
on each neighbour. Here we build the 3x3 resource and check it against an
explicit statevector.
"""

from surfmbqc.lattice import PLUS, ascii_lattice, cluster_stabilizers, cz_entangler, square_lattice
from surfmbqc.oracle import pauli_expectation, prepare

g, roles = square_lattice(3)
print(ascii_lattice(3, roles))

# one generator per vertex, written sparsely
stabs = cluster_stabilizers(g)
for a, k in enumerate(stabs):
    print(f"K({a}) = {k.sparse()}")

# the generators commute and are independent, so they fix a unique state
stabs.validate()
print("rank:", stabs.rank)

# preparing |+>^9 and applying CZ on every edge gives the same state
psi = prepare([PLUS] * g.vertex_count, cz_entangler(g))
print("expectations:", [round(pauli_expectation(psi, k), 12) for k in stabs])
