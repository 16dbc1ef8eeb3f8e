"""Dense statevector reference simulator.

Amplitudes are indexed with qubit 0 as the most significant bit, so the flat
array is the Kronecker product ``q0 (x) q1 (x) ...``.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .lattice import PLUS, ZERO, CliffordCircuit
from .pauli import CliffordGate, DimensionError, PauliOperator, StabilizerSet

DEFAULT_CAPACITY = 20
CAPACITY_ENV = "SURFMBQC_ORACLE_CAPACITY"

GATE_MATRICES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


class CapacityError(ValueError):
    pass


class ZeroNormError(ValueError):
    """A projection annihilated the state."""


def oracle_capacity(override: int | None = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(CAPACITY_ENV, DEFAULT_CAPACITY)
    try:
        return int(raw)
    except ValueError:
        raise CapacityError(f"{CAPACITY_ENV} must be an integer, got {raw!r}") from None


def _n_of(psi: np.ndarray) -> int:
    n = psi.size.bit_length() - 1
    if psi.ndim != 1 or 1 << n != psi.size:
        raise ValueError("state must be a flat array of length 2**n")
    return n


def apply_gate(psi: np.ndarray, gate: CliffordGate) -> np.ndarray:
    n = _n_of(psi)
    if max(gate.targets) >= n:
        raise IndexError(f"gate {gate} out of range for {n} qubits")
    k = len(gate.targets)
    u = GATE_MATRICES[gate.kind].reshape((2,) * (2 * k))
    t = psi.reshape((2,) * n)
    t = np.tensordot(u, t, axes=(list(range(k, 2 * k)), list(gate.targets)))
    t = np.moveaxis(t, list(range(k)), list(gate.targets))
    return t.reshape(-1)


def prepare(
    basis: Sequence[str], circuit: CliffordCircuit | None = None, *, capacity_override=None
) -> np.ndarray:
    n = len(basis)
    limit = oracle_capacity(capacity_override)
    if n > limit:
        raise CapacityError(f"{n} qubits exceeds oracle capacity {limit}")
    single = {PLUS: np.array([1, 1], dtype=complex) / np.sqrt(2), ZERO: np.array([1, 0], dtype=complex)}
    psi = np.ones(1, dtype=complex)
    for b in basis:
        if b not in single:
            raise ValueError(f"unknown basis {b!r}")
        psi = np.kron(psi, single[b])
    if circuit is not None:
        if circuit.n != n:
            raise ValueError("circuit size does not match basis list")
        for g in circuit:
            psi = apply_gate(psi, g)
    return psi


def _index_masks(p: PauliOperator) -> tuple[int, int]:
    n = p.n
    xm = zm = 0
    for q in range(n):
        if (p.x >> q) & 1:
            xm |= 1 << (n - 1 - q)
        if (p.z >> q) & 1:
            zm |= 1 << (n - 1 - q)
    return xm, zm


def apply_pauli(psi: np.ndarray, p: PauliOperator) -> np.ndarray:
    n = _n_of(psi)
    if n != p.n:
        raise DimensionError(f"state has {n} qubits, operator {p.n}")
    xm, zm = _index_masks(p)
    idx = np.arange(psi.size, dtype=np.uint64)
    sign = 1 - 2 * (np.bitwise_count(idx & np.uint64(zm)) & 1).astype(np.int8)
    scalar = 1j ** ((p.phase + (p.x & p.z).bit_count()) % 4)
    out = np.empty_like(psi)
    out[(idx ^ np.uint64(xm)).astype(np.intp)] = scalar * sign * psi
    return out


def pauli_expectation(psi: np.ndarray, p: PauliOperator) -> float:
    val = np.vdot(psi, apply_pauli(psi, p))
    if p.is_hermitian and abs(val.imag) > 1e-9:
        raise ValueError(f"non-real expectation {val} for Hermitian {p}")
    return float(val.real) if p.is_hermitian else val


def project_pauli(psi: np.ndarray, p: PauliOperator, *, tol: float = 1e-12) -> np.ndarray:
    """Apply ``(I + p)/2`` and renormalize."""
    out = 0.5 * (psi + apply_pauli(psi, p))
    norm = np.linalg.norm(out)
    if norm < tol:
        raise ZeroNormError(f"projection onto +1 eigenspace of {p} has zero norm")
    return out / norm


def project(psi: np.ndarray, qubit: int, basis: str, outcome: int = 1) -> np.ndarray:
    """Forced-outcome single-qubit measurement."""
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    p = PauliOperator.single(_n_of(psi), qubit, basis)
    if outcome == -1:
        p = -p
    return project_pauli(psi, p)


def measure_pattern(psi: np.ndarray, pattern) -> np.ndarray:
    for m in pattern:
        psi = project(psi, m.qubit, m.basis)
    return psi


def codewords(s: StabilizerSet, *, capacity: int | None = None) -> list[np.ndarray]:
    """Orthonormal logical basis states of the code stabilized by ``s``.

    ``|0..0>_L`` is obtained by projecting a computational basis state onto
    the +1 eigenspace of every generator and every logical Z; the other
    basis states follow by applying logical X operators.
    """
    from .codes import logical_operators

    n = s.n
    if n > oracle_capacity(capacity):
        raise CapacityError(f"{n} qubits exceeds oracle capacity")
    pairs = logical_operators(s)
    projectors = list(s) + [p.z_logical for p in pairs]
    zero = None
    for ref in range(1 << n):
        psi = np.zeros(1 << n, dtype=complex)
        psi[ref] = 1.0
        try:
            for p in projectors:
                psi = project_pauli(psi, p)
        except ZeroNormError:
            continue
        zero = psi
        break
    if zero is None:
        raise ZeroNormError("every computational basis state was annihilated")
    words = []
    for bits in range(1 << len(pairs)):
        w = zero
        for i, pair in enumerate(pairs):
            if (bits >> (len(pairs) - 1 - i)) & 1:
                w = apply_pauli(w, pair.x_logical)
        words.append(w)
    return words


def amplitudes_json(psi: np.ndarray, max_qubits: int = 6) -> list:
    if _n_of(psi) > max_qubits:
        raise CapacityError(f"amplitude dump limited to {max_qubits} qubits")
    return [[float(a.real), float(a.imag)] for a in psi]
