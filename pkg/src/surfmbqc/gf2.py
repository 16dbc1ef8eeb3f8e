"""GF(2) linear algebra on bit-packed rows.

Every vector is a Python ``int``; bit ``j`` holds column ``j``. Python ints
are arbitrary precision, so rows of any width pack into machine words
without a separate buffer type.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def _lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Fully reduced row echelon form.

    Pivots are the lowest set bit of each row. Returns ``(basis, pivots)``
    with the basis sorted by ascending pivot. The result is unique for a
    given row space.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for v in rows:
        for b, p in zip(basis, pivots):
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = _lowbit(v)
        for i, b in enumerate(basis):
            if (b >> p) & 1:
                basis[i] = b ^ v
        basis.append(v)
        pivots.append(p)
    order = sorted(range(len(basis)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows)[0])


def reduce(v: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    """Residual of ``v`` modulo the span of an RREF basis."""
    for b, p in zip(basis, pivots):
        if (v >> p) & 1:
            v ^= b
    return v


def in_span(v: int, rows: Iterable[int]) -> bool:
    basis, pivots = rref(rows)
    return reduce(v, basis, pivots) == 0


def solve(v: int, rows: Sequence[int]) -> int | None:
    """Find a subset of ``rows`` summing to ``v``.

    Returns a bitmask over row indices, or ``None`` when ``v`` is outside the
    row space.
    """
    basis: list[int] = []
    combos: list[int] = []
    pivots: list[int] = []
    for i, r in enumerate(rows):
        c = 1 << i
        for b, bc, p in zip(basis, combos, pivots):
            if (r >> p) & 1:
                r ^= b
                c ^= bc
        if r:
            basis.append(r)
            combos.append(c)
            pivots.append(_lowbit(r))
    combo = 0
    for b, bc, p in zip(basis, combos, pivots):
        if (v >> p) & 1:
            v ^= b
            combo ^= bc
    return combo if v == 0 else None


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of ``{v : parity(v & r) == 0 for every r}``."""
    basis, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if (b >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def matrix_to_rows(mat) -> list[int]:
    """Pack a 0/1 matrix (rows x cols, array-like) into int rows."""
    out = []
    for row in mat:
        v = 0
        for j, bit in enumerate(row):
            if int(bit) & 1:
                v |= 1 << j
        out.append(v)
    return out


def rows_to_bits(v: int, ncols: int) -> list[int]:
    return [(v >> j) & 1 for j in range(ncols)]
