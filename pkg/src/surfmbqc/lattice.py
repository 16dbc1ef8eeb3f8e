"""Cluster graphs, square surface-code lattices and entangling circuits."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .pauli import CliffordGate, PauliOperator, StabilizerSet, conjugate

DATA, MEASURE_X, MEASURE_Z = "data", "measure_x", "measure_z"
PLUS, ZERO = "plus", "zero"


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValueError(f"edge {e} out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
        edges = [tuple(e) for e in edges]
        if len({(min(e), max(e)) for e in edges}) != len(edges):
            raise ValueError("duplicate edge")
        return cls(vertex_count, frozenset(edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, a: int) -> list[int]:
        out = []
        for i, j in self.edges:
            if i == a:
                out.append(j)
            elif j == a:
                out.append(i)
        return sorted(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, j in self.sorted_edges():
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]

    def without(self, victims: Iterable[int]) -> Graph:
        """Same vertex set, with every edge touching ``victims`` deleted."""
        victims = set(victims)
        return Graph(
            self.vertex_count,
            frozenset(e for e in self.edges if e[0] not in victims and e[1] not in victims),
        )

    def to_json(self, roles: dict[int, str] | None = None) -> dict:
        out: dict = {"n": self.vertex_count, "edges": [list(e) for e in self.sorted_edges()]}
        if roles is not None:
            out["roles"] = {str(v): roles[v] for v in sorted(roles)}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> tuple[Graph, dict[int, str] | None]:
        g = cls.from_edges(obj["n"], obj["edges"])
        roles = obj.get("roles")
        if roles is not None:
            roles = {int(k): v for k, v in roles.items()}
        return g, roles


@dataclass(frozen=True)
class CliffordCircuit:
    n: int
    gates: tuple[CliffordGate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.targets) >= self.n:
                raise ValueError(f"gate {g} out of range for {self.n} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def square_lattice(n: int) -> tuple[Graph, dict[int, str]]:
    """``n x n`` nearest-neighbour grid, row-major, with surface-code roles.

    Sites with both coordinates even or both odd hold data; (even, odd)
    sites are measure-Z and (odd, even) sites are measure-X.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"lattice size must be an odd integer >= 3, got {n!r}")
    edges = set()
    roles = {}
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.add((v, v + 1))
            if r + 1 < n:
                edges.add((v, v + n))
            if r % 2 == c % 2:
                roles[v] = DATA
            elif r % 2 == 0:
                roles[v] = MEASURE_Z
            else:
                roles[v] = MEASURE_X
    return Graph(n * n, frozenset(edges)), roles


def vertices_with(roles: dict[int, str], role: str) -> list[int]:
    return sorted(v for v, r in roles.items() if r == role)


def cluster_stabilizers(g: Graph) -> StabilizerSet:
    """One generator ``X_a prod_{b in N(a)} Z_b`` per vertex, all with sign +1."""
    adj = g.adjacency()
    gens = []
    for a in range(g.vertex_count):
        z = 0
        for b in adj[a]:
            z |= 1 << b
        gens.append(PauliOperator(g.vertex_count, 1 << a, z))
    return StabilizerSet(g.vertex_count, tuple(gens))


def cz_entangler(g: Graph) -> CliffordCircuit:
    return CliffordCircuit(g.vertex_count, tuple(CliffordGate("CZ", e) for e in g.sorted_edges()))


def entangled_stabilizers(initial: Sequence[str], circuit: CliffordCircuit) -> StabilizerSet:
    """Stabilizers of a product of ``|+>``/``|0>`` states after ``circuit``."""
    n = len(initial)
    if circuit.n != n:
        raise ValueError(f"circuit acts on {circuit.n} qubits, basis list has {n}")
    gens = []
    for q, b in enumerate(initial):
        if b == PLUS:
            p = PauliOperator.single(n, q, "X")
        elif b == ZERO:
            p = PauliOperator.single(n, q, "Z")
        else:
            raise ValueError(f"unknown basis {b!r}")
        for gate in circuit:
            p = conjugate(p, gate)
        gens.append(p)
    return StabilizerSet(n, tuple(gens))


def cnot_circuit(n: int) -> tuple[list[str], CliffordCircuit]:
    """Initial bases and CNOT network of the gate-model surface-code cycle.

    Measure-X qubits start in ``|+>`` and act as controls onto their data
    neighbours; data qubits then act as controls onto neighbouring measure-Z
    qubits. Everything except measure-X starts in ``|0>``.
    """
    g, roles = square_lattice(n)
    adj = g.adjacency()
    initial = [PLUS if roles[v] == MEASURE_X else ZERO for v in range(g.vertex_count)]
    gates = []
    for m in vertices_with(roles, MEASURE_X):
        gates += [CliffordGate("CNOT", (m, d)) for d in adj[m] if roles[d] == DATA]
    for d in vertices_with(roles, DATA):
        gates += [CliffordGate("CNOT", (d, m)) for m in adj[d] if roles[m] == MEASURE_Z]
    return initial, CliffordCircuit(g.vertex_count, tuple(gates))


def cnot_baseline(n: int) -> StabilizerSet:
    initial, circuit = cnot_circuit(n)
    return entangled_stabilizers(initial, circuit)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_ROLE_LABEL = {DATA: "data", MEASURE_X: "X", MEASURE_Z: "Z"}
_ROLE_CHAR = {DATA: "o", MEASURE_X: "X", MEASURE_Z: "Z"}


def to_dot(g: Graph, roles: dict[int, str] | None = None, name: str = "lattice") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        if roles is None:
            lines.append(f'  {v} [label="{v}"];')
        else:
            lines.append(f'  {v} [label="{v}:{_ROLE_LABEL[roles[v]]}", role="{roles[v]}"];')
    for i, j in g.sorted_edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ascii_lattice(n: int, roles: dict[int, str]) -> str:
    """Grid picture: ``o`` data, ``X`` measure-X, ``Z`` measure-Z."""
    rows = []
    for r in range(n):
        cells = [_ROLE_CHAR[roles[r * n + c]] for c in range(n)]
        rows.append(" - ".join(cells))
        if r + 1 < n:
            rows.append("   ".join("|" for _ in range(n)))
    return "\n".join(rows) + "\n"
