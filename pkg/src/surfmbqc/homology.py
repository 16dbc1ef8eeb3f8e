"""Z2 chain complexes of 2D cell structures.

Boundary matrices are stored with one row per higher-dimensional cell:
``boundary2`` is ``F x E`` and ``boundary1`` is ``E x V``, so the boundary of
a row chain ``c`` is ``c @ boundary mod 2``. An edge with a single endpoint is
allowed; it models a boundary vertex that was left out of the complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .lattice import DATA, MEASURE_X, MEASURE_Z, square_lattice


class ComplexError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ChainComplex:
    n_vertices: int
    n_edges: int
    n_faces: int
    boundary2: np.ndarray  # F x E
    boundary1: np.ndarray  # E x V

    def __post_init__(self):
        b2 = np.asarray(self.boundary2, dtype=np.uint8).reshape(self.n_faces, self.n_edges) & 1
        b1 = np.asarray(self.boundary1, dtype=np.uint8).reshape(self.n_edges, self.n_vertices) & 1
        object.__setattr__(self, "boundary2", b2)
        object.__setattr__(self, "boundary1", b1)

    def size(self, dim: int) -> int:
        return (self.n_vertices, self.n_edges, self.n_faces)[dim]

    def is_valid(self) -> bool:
        return not ((self.boundary2.astype(np.int64) @ self.boundary1) % 2).any()

    def to_json(self) -> dict:
        edges = [np.flatnonzero(row).tolist() for row in self.boundary1]
        faces = [np.flatnonzero(row).tolist() for row in self.boundary2]
        return {"V": self.n_vertices, "E": edges, "F": faces}


@dataclass(frozen=True, eq=False)
class Chain:
    dim: int
    bits: np.ndarray

    def __post_init__(self):
        if self.dim not in (0, 1, 2):
            raise ValueError("chain dimension must be 0, 1 or 2")
        object.__setattr__(self, "bits", np.asarray(self.bits, dtype=np.uint8) & 1)

    @classmethod
    def of(cls, dim: int, size: int, cells: Sequence[int] = ()) -> Chain:
        bits = np.zeros(size, dtype=np.uint8)
        for c in cells:
            bits[c] ^= 1
        return cls(dim, bits)

    @property
    def cells(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def is_zero(self) -> bool:
        return not self.bits.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.dim == other.dim
            and np.array_equal(self.bits, other.bits)
        )

    def __add__(self, other: Chain) -> Chain:
        return chain_add(self, other)

    def __repr__(self) -> str:
        return f"Chain(dim={self.dim}, cells={self.cells})"


def from_surface(
    n_vertices: int, edges: Sequence[Sequence[int]], faces: Sequence[Sequence[int]]
) -> ChainComplex:
    """Build a complex from edge endpoint lists and face edge lists.

    Raises :class:`ComplexError` if an index is out of range or the face
    boundaries are not cycles.
    """
    b1 = np.zeros((len(edges), n_vertices), dtype=np.uint8)
    for e, ends in enumerate(edges):
        if not 1 <= len(ends) <= 2:
            raise ComplexError(f"edge {e} must have one or two endpoints")
        for v in ends:
            if not 0 <= v < n_vertices:
                raise ComplexError(f"edge {e} references unknown vertex {v}")
            b1[e, v] ^= 1
    b2 = np.zeros((len(faces), len(edges)), dtype=np.uint8)
    for f, face in enumerate(faces):
        for e in face:
            if not 0 <= e < len(edges):
                raise ComplexError(f"face {f} references unknown edge {e}")
            b2[f, e] ^= 1
    cx = ChainComplex(n_vertices, len(edges), len(faces), b2, b1)
    if not cx.is_valid():
        raise ComplexError("boundary of a face boundary is not zero")
    return cx


def from_json(obj: dict) -> ChainComplex:
    return from_surface(obj["V"], obj["E"], obj["F"])


def boundary(c: Chain, cx: ChainComplex) -> Chain:
    if c.bits.size != cx.size(c.dim):
        raise ValueError(f"{c.dim}-chain has {c.bits.size} cells, complex has {cx.size(c.dim)}")
    if c.dim == 0:
        return Chain(0, np.zeros(cx.n_vertices, dtype=np.uint8))
    mat = cx.boundary2 if c.dim == 2 else cx.boundary1
    return Chain(c.dim - 1, (c.bits.astype(np.int64) @ mat) % 2)


def chain_add(a: Chain, b: Chain) -> Chain:
    if a.dim != b.dim or a.bits.size != b.bits.size:
        raise ValueError("chains differ in dimension or length")
    return Chain(a.dim, a.bits ^ b.bits)


def _rank(mat: np.ndarray) -> int:
    return gf2.rank(gf2.matrix_to_rows(mat))


def h1_rank(cx: ChainComplex) -> int:
    """``dim ker d1 - dim im d2``."""
    cycles = cx.n_edges - _rank(cx.boundary1)
    return cycles - _rank(cx.boundary2)


def cycle_basis(cx: ChainComplex) -> list[Chain]:
    rows = gf2.matrix_to_rows(cx.boundary1.T)
    return [Chain(1, gf2.rows_to_bits(v, cx.n_edges)) for v in gf2.nullspace(rows, cx.n_edges)]


def is_boundary(c: Chain, cx: ChainComplex) -> bool:
    if c.dim != 1:
        raise ValueError("only 1-chains are supported")
    return gf2.in_span(gf2.matrix_to_rows([c.bits])[0], gf2.matrix_to_rows(cx.boundary2))


def homologically_equivalent(a: Chain, b: Chain, cx: ChainComplex) -> bool:
    """Whether ``a + b`` is the boundary of some 2-chain."""
    if a.dim != 1 or b.dim != 1:
        raise ValueError("only 1-chains are supported")
    if boundary(a, cx) != boundary(b, cx):
        raise ValueError("chains have different boundaries")
    return is_boundary(chain_add(a, b), cx)


# ---------------------------------------------------------------------------
# Standard complexes
# ---------------------------------------------------------------------------


def grid_disc(rows: int, cols: int) -> ChainComplex:
    """Filled ``rows x cols`` grid of square faces."""
    vid = lambda r, c: r * (cols + 1) + c  # noqa: E731
    edges, index = [], {}
    for r in range(rows + 1):
        for c in range(cols + 1):
            if c < cols:
                index[("h", r, c)] = len(edges)
                edges.append((vid(r, c), vid(r, c + 1)))
            if r < rows:
                index[("v", r, c)] = len(edges)
                edges.append((vid(r, c), vid(r + 1, c)))
    faces = [
        [index[("h", r, c)], index[("h", r + 1, c)], index[("v", r, c)], index[("v", r, c + 1)]]
        for r in range(rows)
        for c in range(cols)
    ]
    return from_surface((rows + 1) * (cols + 1), edges, faces)


def torus_grid(size: int) -> ChainComplex:
    """``size x size`` square grid with periodic identifications."""
    if size < 3:
        raise ValueError("torus grid needs size >= 3 to avoid repeated edges")
    L = size
    vid = lambda r, c: (r % L) * L + (c % L)  # noqa: E731
    edges, index = [], {}
    for r in range(L):
        for c in range(L):
            index[("h", r, c)] = len(edges)
            edges.append((vid(r, c), vid(r, c + 1)))
            index[("v", r, c)] = len(edges)
            edges.append((vid(r, c), vid(r + 1, c)))
    faces = [
        [
            index[("h", r, c)],
            index[("h", (r + 1) % L, c)],
            index[("v", r, c)],
            index[("v", r, (c + 1) % L)],
        ]
        for r in range(L)
        for c in range(L)
    ]
    return from_surface(L * L, edges, faces)


def surface_code_complex(n: int, primal: str = "x") -> tuple[ChainComplex, list[int]]:
    """Mixed-boundary complex of the ``n x n`` lattice code.

    Data qubits are edges. Checks of the ``primal`` type become faces and the
    other checks become vertices, so primal-type logical operators are
    1-cycles and primal-type stabilizers are face boundaries. Data qubits on
    the boundary with a single vertex neighbour are dangling edges.

    Returns the complex and the lattice vertex of each edge, in edge order.
    """
    g, roles = square_lattice(n)
    if primal not in ("x", "z"):
        raise ValueError("primal must be 'x' or 'z'")
    face_role, vertex_role = (MEASURE_X, MEASURE_Z) if primal == "x" else (MEASURE_Z, MEASURE_X)
    adj = g.adjacency()
    data = [v for v in range(g.vertex_count) if roles[v] == DATA]
    verts = [v for v in range(g.vertex_count) if roles[v] == vertex_role]
    faces_at = [v for v in range(g.vertex_count) if roles[v] == face_role]
    edge_of = {d: i for i, d in enumerate(data)}
    vert_of = {v: i for i, v in enumerate(verts)}
    edges = [[vert_of[m] for m in adj[d] if roles[m] == vertex_role] for d in data]
    faces = [[edge_of[d] for d in adj[f] if roles[d] == DATA] for f in faces_at]
    return from_surface(len(verts), edges, faces), data
