from __future__ import annotations

import itertools
import random
from functools import reduce

import numpy as np
from hypothesis import strategies as st

from surfmbqc.pauli import CliffordGate, PauliOperator, StabilizerSet, conjugate

SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}


def dense(p: PauliOperator) -> np.ndarray:
    """Explicit matrix, qubit 0 as the leftmost Kronecker factor."""
    mat = reduce(np.kron, [SINGLE[c] for c in p.letters], np.eye(1, dtype=complex))
    return (1j**p.phase) * mat


def dense_gate(g: CliffordGate, n: int) -> np.ndarray:
    """Explicit unitary built column by column from basis states."""
    from surfmbqc.oracle import apply_gate

    cols = []
    for i in range(1 << n):
        e = np.zeros(1 << n, dtype=complex)
        e[i] = 1
        cols.append(apply_gate(e, g))
    return np.array(cols).T


def all_paulis(n: int):
    for letters in itertools.product("IXYZ", repeat=n):
        yield PauliOperator.from_string("".join(letters))


def group_elements(s: StabilizerSet) -> set[tuple[int, int, int]]:
    """Every signed element of the generated group, by explicit expansion."""
    out = set()
    for mask in range(1 << len(s)):
        p = PauliOperator.identity(s.n)
        for i, g in enumerate(s):
            if (mask >> i) & 1:
                p = p * g
        out.add((p.x, p.z, p.phase))
    return out


def random_stabilizer_set(rng: random.Random, n: int, r: int, depth: int = 30) -> StabilizerSet:
    """``r`` independent commuting generators from a random Clifford circuit."""
    gens = [PauliOperator.single(n, q, "Z") for q in range(r)]
    for _ in range(depth):
        kind = rng.choice(["H", "S", "X", "Z", "CNOT", "CZ"])
        if kind in ("CNOT", "CZ"):
            if n < 2:
                continue
            targets = tuple(rng.sample(range(n), 2))
        else:
            targets = (rng.randrange(n),)
        g = CliffordGate(kind, targets)
        gens = [conjugate(p, g) for p in gens]
    return StabilizerSet(n, tuple(gens))


letters = st.sampled_from("IXYZ")


@st.composite
def paulis(draw, n=None, min_n=1, max_n=6, signed=True):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    body = "".join(draw(st.lists(letters, min_size=n, max_size=n)))
    phase = draw(st.integers(0, 3)) if signed else 0
    return PauliOperator.from_string(body).with_phase(phase)


@st.composite
def pauli_pairs(draw, min_n=1, max_n=6, signed=True):
    n = draw(st.integers(min_n, max_n))
    return draw(paulis(n=n, signed=signed)), draw(paulis(n=n, signed=signed))


@st.composite
def gates(draw, n):
    kind = draw(st.sampled_from(["H", "S", "X", "Z", "CNOT", "CZ"] if n >= 2 else ["H", "S", "X", "Z"]))
    if kind in ("CNOT", "CZ"):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 2))
        b = b + 1 if b >= a else b
        return CliffordGate(kind, (a, b))
    return CliffordGate(kind, (draw(st.integers(0, n - 1)),))


@st.composite
def stabilizer_sets(draw, min_n=1, max_n=6, min_r=1):
    n = draw(st.integers(min_n, max_n))
    r = draw(st.integers(min(min_r, n), n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_stabilizer_set(random.Random(seed), n, r)


@st.composite
def graphs(draw, min_n=2, max_n=12):
    from surfmbqc.lattice import Graph

    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 2 * n)))
    return Graph(n, frozenset(chosen))
