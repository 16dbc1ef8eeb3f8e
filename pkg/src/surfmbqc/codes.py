"""Stabilizer codes: syndromes, logical operators, distance and code checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from . import gf2
from .pauli import (
    DimensionError,
    InvariantError,
    PauliOperator,
    StabilizerSet,
    commutes,
    symplectic_product,
)


class NoLogicalSpaceError(ValueError):
    """The stabilizer group has full rank, so there is nothing encoded."""


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: int | None

    @property
    def correctable(self) -> int | None:
        """Number of arbitrary errors the code corrects, ``floor((d - 1) / 2)``."""
        return None if self.d is None else (self.d - 1) // 2

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{'?' if self.d is None else self.d}]]"


@dataclass(frozen=True)
class LogicalPair:
    x_logical: PauliOperator
    z_logical: PauliOperator

    @property
    def y_logical(self) -> PauliOperator:
        xz = self.x_logical * self.z_logical
        return xz.with_phase(xz.phase + 1)


def logical_qubits(s: StabilizerSet) -> int:
    return s.n - s.rank


def syndrome(e: PauliOperator, s: StabilizerSet) -> tuple[int, ...]:
    if e.n != s.n:
        raise DimensionError(f"error acts on {e.n} qubits, code on {s.n}")
    return tuple(symplectic_product(g, e) for g in s)


def syndrome_string(e: PauliOperator, s: StabilizerSet) -> str:
    return "".join(map(str, syndrome(e, s)))


def is_detectable(e: PauliOperator, s: StabilizerSet) -> bool:
    """True unless ``e`` lies in the normalizer but outside the stabilizer group."""
    return any(syndrome(e, s)) or s.contains(e)


# ---------------------------------------------------------------------------
# Normalizer and logical operators
# ---------------------------------------------------------------------------


def _swap(v: int, n: int) -> int:
    mask = (1 << n) - 1
    return (v >> n) | ((v & mask) << n)


def normalizer_basis(s: StabilizerSet) -> list[PauliOperator]:
    """Unsigned basis of all Paulis commuting with every generator."""
    rows = [_swap(g.vector, s.n) for g in s]
    return [PauliOperator.from_vector(s.n, v) for v in gf2.nullspace(rows, 2 * s.n)]


def _minimize(p: PauliOperator, s: StabilizerSet) -> PauliOperator:
    """Greedy weight reduction by single stabilizer generators."""
    improved = True
    while improved:
        improved = False
        for g in s:
            q = p * g
            if q.weight < p.weight:
                p, improved = q, True
    return p


def logical_operators(s: StabilizerSet) -> list[LogicalPair]:
    """``k`` anticommuting pairs completing ``s`` to a symplectic basis.

    Pure X-type and pure Z-type normalizer elements are tried first, so CSS
    codes get an X-type ``X_L`` and a Z-type ``Z_L``. Representatives are
    shortened greedily within their coset and returned Hermitian with
    sign +1.
    """
    n = s.n
    k = logical_qubits(s)
    if k < 1:
        raise NoLogicalSpaceError("stabilizer group has full rank")
    gz_rows = [g.z for g in s]
    gx_rows = [g.x for g in s]
    x_type = [PauliOperator(n, v, 0) for v in gf2.nullspace(gz_rows, n)]
    z_type = [PauliOperator(n, 0, v) for v in gf2.nullspace(gx_rows, n)]
    candidates = x_type + z_type + normalizer_basis(s)

    span = [g.vector for g in s]
    pool: list[PauliOperator] = []
    for c in candidates:
        if not gf2.in_span(c.vector, span):
            pool.append(c)
            span.append(c.vector)
    pairs = []
    while pool:
        a = pool.pop(0)
        j = next((i for i, c in enumerate(pool) if not commutes(a, c)), None)
        if j is None:
            continue
        b = pool.pop(j)
        rest = []
        for c in pool:
            if not commutes(c, b):
                c = c * a
            if not commutes(c, a):
                c = c * b
            rest.append(c.unsigned())
        pool = rest
        pairs.append((a, b))
    if len(pairs) != k:
        raise RuntimeError(f"found {len(pairs)} logical pairs, expected {k}")
    return [
        LogicalPair(_minimize(a, s).unsigned(), _minimize(b, s).unsigned()) for a, b in pairs
    ]


def check_logical_pairs(s: StabilizerSet, pairs: Sequence[LogicalPair]) -> None:
    """Raise :class:`InvariantError` unless ``pairs`` is a valid logical basis for ``s``."""
    if len(pairs) != logical_qubits(s):
        raise InvariantError(f"{len(pairs)} logical pairs for k={logical_qubits(s)}")
    for pair in pairs:
        for p in (pair.x_logical, pair.z_logical):
            if p.n != s.n:
                raise DimensionError(f"logical {p} does not act on {s.n} qubits")
            if not all(commutes(p, g) for g in s):
                raise InvariantError(f"logical {p} does not commute with the stabilizers")
        if commutes(pair.x_logical, pair.z_logical):
            raise InvariantError(f"{pair.x_logical} and {pair.z_logical} commute")
    for i, a in enumerate(pairs):
        for b in pairs[i + 1 :]:
            for p in (a.x_logical, a.z_logical):
                if not (commutes(p, b.x_logical) and commutes(p, b.z_logical)):
                    raise InvariantError("logical pairs of different qubits do not commute")


def centralizer_table(
    s: StabilizerSet, pairs: Sequence[LogicalPair]
) -> list[tuple[PauliOperator, int]]:
    """Logical operators and their products with each generator, with weights.

    Each pair contributes ``X_L, Z_L, Y_L`` first, followed by every product
    of those three with every stabilizer generator.
    """
    if not pairs:
        raise NoLogicalSpaceError("no logical pairs given")
    rows = []
    for pair in pairs:
        logicals = [pair.x_logical, pair.z_logical, pair.y_logical]
        rows += [(p, p.weight) for p in logicals]
        for p in logicals:
            for g in s:
                q = p * g
                rows.append((q, q.weight))
    return rows


# ---------------------------------------------------------------------------
# Distance
# ---------------------------------------------------------------------------

# letter choices per site as (x, z)
_SITE_LETTERS = np.array([(1, 0), (1, 1), (0, 1)], dtype=np.uint64)


def _weight_class(n: int, w: int, chunk: int):
    """Yield (x, z) uint64 arrays of every weight-``w`` Pauli, in chunks."""
    letters = np.array(list(itertools.product(range(3), repeat=w)), dtype=np.intp)
    lx = _SITE_LETTERS[letters, 0]  # (3^w, w)
    lz = _SITE_LETTERS[letters, 1]
    combos = itertools.combinations(range(n), w)
    per_chunk = max(1, chunk // len(letters))
    while True:
        block = list(itertools.islice(combos, per_chunk))
        if not block:
            return
        bits = np.left_shift(np.uint64(1), np.array(block, dtype=np.uint64))  # (c, w)
        x = (bits[:, None, :] * lx[None, :, :]).sum(axis=-1, dtype=np.uint64).ravel()
        z = (bits[:, None, :] * lz[None, :, :]).sum(axis=-1, dtype=np.uint64).ravel()
        yield x, z


def _commuting_mask(x, z, s: StabilizerSet):
    ok = np.ones(x.shape, dtype=bool)
    for g in s:
        gx, gz = np.uint64(g.x), np.uint64(g.z)
        par = (np.bitwise_count(x & gz) + np.bitwise_count(z & gx)) & 1
        ok &= par == 0
    return ok


def distance(
    s: StabilizerSet, max_weight: int | None = None, *, chunk: int = 1 << 20
) -> int | None:
    """Exact minimum weight of the normalizer minus the stabilizer group.

    Weights are scanned in increasing order and the scan stops at the first
    weight class containing a logical operator. Returns ``None`` when no
    logical operator exists up to ``max_weight``.
    """
    n = s.n
    if logical_qubits(s) < 1:
        raise NoLogicalSpaceError("stabilizer group has full rank")
    top = n if max_weight is None else min(n, max_weight)
    basis, pivots = gf2.rref(g.vector for g in s)

    def nontrivial(px: int, pz: int) -> bool:
        return gf2.reduce(px | (pz << n), basis, pivots) != 0

    if n > 64:
        return _distance_python(s, top, nontrivial)
    for w in range(1, top + 1):
        for x, z in _weight_class(n, w, chunk):
            for i in np.flatnonzero(_commuting_mask(x, z, s)):
                if nontrivial(int(x[i]), int(z[i])):
                    return w
    return None


def _distance_python(s: StabilizerSet, top: int, nontrivial) -> int | None:
    n = s.n
    for w in range(1, top + 1):
        for supp in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                p = PauliOperator.from_sites(n, dict(zip(supp, letters)))
                if all(commutes(p, g) for g in s) and nontrivial(p.x, p.z):
                    return w
    return None


def candidate_count(n: int, w: int) -> int:
    return 3**w * comb(n, w)


def code_parameters(s: StabilizerSet, max_weight: int | None = None) -> CodeParameters:
    k = logical_qubits(s)
    d = distance(s, max_weight) if k >= 1 else None
    return CodeParameters(s.n, k, d)


def single_qubit_errors(n: int, include_identity: bool = True) -> list[PauliOperator]:
    errs = [PauliOperator.identity(n)] if include_identity else []
    for q in range(n):
        errs += [PauliOperator.single(n, q, letter) for letter in "XYZ"]
    return errs


def perfect_code_check(s: StabilizerSet) -> bool:
    """Single-qubit errors plus identity hit every syndrome exactly once."""
    syndromes = {syndrome(e, s) for e in single_qubit_errors(s.n)}
    total = 3 * s.n + 1
    return len(syndromes) == total and total == 2 ** len(s)


def knill_laflamme_check(
    s: StabilizerSet,
    errors: Sequence[PauliOperator],
    *,
    strict: bool = False,
    tol: float = 1e-9,
    capacity: int | None = None,
) -> bool:
    """Check ``<i|E_a^dag E_b|j> = c_ab delta_ij`` on the code's basis states.

    ``strict=True`` demands ``c_ab = delta_ab`` instead, which rejects
    degenerate codes.
    """
    from .oracle import apply_pauli, codewords

    if not errors:
        raise ValueError("need at least one error")
    words = codewords(s, capacity=capacity)
    for a, ea in enumerate(errors):
        for b, eb in enumerate(errors):
            op = _dagger(ea) * eb
            images = [apply_pauli(w, op) for w in words]
            gram = np.array([[np.vdot(wi, img) for img in images] for wi in words])
            c = gram[0, 0]
            expected = c * np.eye(len(words))
            if strict:
                expected = (1.0 if a == b else 0.0) * np.eye(len(words))
            if not np.allclose(gram, expected, atol=tol, rtol=0):
                return False
    return True


def _dagger(p: PauliOperator) -> PauliOperator:
    # letters are Hermitian, so only the scalar conjugates
    return p.with_phase(-p.phase)
