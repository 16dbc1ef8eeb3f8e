"""Binary symplectic Pauli operators with exact phases.

A :class:`PauliOperator` on ``n`` qubits is ``i**phase`` times a tensor product
of letters from ``{I, X, Y, Z}``. The letters are stored as two bit-packed
ints: bit ``j`` of ``x`` is set where X or Y acts, bit ``j`` of ``z`` where Z or
Y acts. Qubit 0 is the leftmost character of the string form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf2

LETTERS = "IXZY"  # index = x + 2*z
_PREFIXES = {"": 0, "+": 0, "+1": 0, "+i": 1, "i": 1, "-": 2, "-1": 2, "-i": 3}
_PHASE_STR = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class InvariantError(ValueError):
    """A structural invariant (commutation, independence, ...) is violated."""


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class PauliOperator:
    """``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}``."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        if (self.x | self.z) >> self.n:
            raise ValueError("bits set beyond qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> PauliOperator:
        text = text.strip()
        i = 0
        while i < len(text) and text[i] not in "IXYZ":
            i += 1
        prefix, body = text[:i], text[i:]
        if prefix not in _PREFIXES:
            raise ValueError(f"bad phase prefix {prefix!r}")
        x = z = 0
        for j, ch in enumerate(body):
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
            if ch in "XY":
                x |= 1 << j
            if ch in "ZY":
                z |= 1 << j
        return cls(len(body), x, z, _PREFIXES[prefix])

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliOperator:
        """Single-site operator ``letter`` on ``qubit`` of an ``n``-qubit register."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for n={n}")
        code = LETTERS.index(letter)
        return cls(n, (code & 1) << qubit, (code >> 1) << qubit)

    @classmethod
    def from_sites(cls, n: int, sites: dict[int, str], phase: int = 0) -> PauliOperator:
        x = z = 0
        for q, letter in sites.items():
            p = cls.single(n, q, letter)
            x |= p.x
            z |= p.z
        return cls(n, x, z, phase)

    @classmethod
    def from_json(cls, obj: dict) -> PauliOperator:
        p = cls.from_string(obj["paulis"])
        if p.n != obj["n"]:
            raise DimensionError("'n' disagrees with length of 'paulis'")
        return cls(p.n, p.x, p.z, obj.get("phase", 0))

    # -- views --------------------------------------------------------------

    def letter(self, q: int) -> str:
        return LETTERS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    @property
    def support(self) -> list[int]:
        s = self.x | self.z
        return [q for q in range(self.n) if (s >> q) & 1]

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return not (self.x | self.z)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def vector(self) -> int:
        """Symplectic vector packed as ``x | z << n`` (phase dropped)."""
        return self.x | (self.z << self.n)

    @classmethod
    def from_vector(cls, n: int, v: int, phase: int = 0) -> PauliOperator:
        return cls(n, v & _mask(n), v >> n, phase)

    def with_phase(self, phase: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, phase)

    def unsigned(self) -> PauliOperator:
        return self.with_phase(0)

    def to_json(self) -> dict:
        return {"n": self.n, "phase": self.phase, "paulis": self.letters}

    def sparse(self) -> str:
        """Compact form listing only non-identity sites, e.g. ``X0 Z1 Z3``."""
        body = " ".join(f"{self.letter(q)}{q}" for q in self.support) or "I"
        return body if self.phase == 0 else f"{_PHASE_STR[self.phase]}{body}"

    def __str__(self) -> str:
        return _PHASE_STR[self.phase] + self.letters

    def __repr__(self) -> str:
        return f"PauliOperator({str(self)!r})"

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return self.with_phase(self.phase + 2)

    def __len__(self) -> int:
        return self.n


def _check_dims(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise DimensionError(f"qubit counts differ: {a.n} vs {b.n}")


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Exact product ``a @ b``."""
    _check_dims(a, b)
    ax, az, bx, bz = a.x, a.z, b.x, b.z
    a_x, a_y, a_z = ax & ~az, ax & az, az & ~ax
    b_x, b_y, b_z = bx & ~bz, bx & bz, bz & ~bx
    # XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
    plus = ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).bit_count()
    minus = ((a_y & b_x) | (a_z & b_y) | (a_x & b_z)).bit_count()
    return PauliOperator(a.n, ax ^ bx, az ^ bz, a.phase + b.phase + plus - minus)


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    _check_dims(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_product(a, b) == 0


def weight(p: PauliOperator) -> int:
    return p.weight


# ---------------------------------------------------------------------------
# Clifford gates
# ---------------------------------------------------------------------------

_ONE_QUBIT = ("H", "S", "X", "Z")
_TWO_QUBIT = ("CNOT", "CZ")


@dataclass(frozen=True)
class CliffordGate:
    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind in _ONE_QUBIT:
            if len(self.targets) != 1:
                raise ValueError(f"{self.kind} takes one target")
        elif self.kind in _TWO_QUBIT:
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ValueError(f"{self.kind} takes two distinct targets")
        else:
            raise ValueError(f"unknown gate {self.kind!r}")
        if min(self.targets) < 0:
            raise IndexError("negative qubit index")

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.targets))})"


def _images(gate: CliffordGate, n: int) -> dict[tuple[int, str], PauliOperator]:
    """Images of X_q and Z_q for every qubit q the gate touches."""
    P = PauliOperator.from_sites
    k, t = gate.kind, gate.targets
    if k == "H":
        (q,) = t
        return {(q, "X"): P(n, {q: "Z"}), (q, "Z"): P(n, {q: "X"})}
    if k == "S":
        (q,) = t
        return {(q, "X"): P(n, {q: "Y"}), (q, "Z"): P(n, {q: "Z"})}
    if k == "X":
        (q,) = t
        return {(q, "X"): P(n, {q: "X"}), (q, "Z"): P(n, {q: "Z"}, phase=2)}
    if k == "Z":
        (q,) = t
        return {(q, "X"): P(n, {q: "X"}, phase=2), (q, "Z"): P(n, {q: "Z"})}
    c, u = t
    if k == "CNOT":
        return {
            (c, "X"): P(n, {c: "X", u: "X"}),
            (c, "Z"): P(n, {c: "Z"}),
            (u, "X"): P(n, {u: "X"}),
            (u, "Z"): P(n, {c: "Z", u: "Z"}),
        }
    # CZ
    return {
        (c, "X"): P(n, {c: "X", u: "Z"}),
        (c, "Z"): P(n, {c: "Z"}),
        (u, "X"): P(n, {c: "Z", u: "X"}),
        (u, "Z"): P(n, {u: "Z"}),
    }


def conjugate(p: PauliOperator, g: CliffordGate) -> PauliOperator:
    """Return ``U p U^dagger`` for the Clifford ``U`` described by ``g``."""
    if max(g.targets) >= p.n:
        raise IndexError(f"gate {g} out of range for n={p.n}")
    images = _images(g, p.n)
    touched = 0
    for q in g.targets:
        touched |= 1 << q
    # untouched part is left alone; touched sites are rebuilt as i^y X^x Z^z
    out = PauliOperator(p.n, p.x & ~touched, p.z & ~touched, p.phase)
    for q in g.targets:
        xq, zq = (p.x >> q) & 1, (p.z >> q) & 1
        if xq:
            out = out * images[(q, "X")]
        if zq:
            out = out * images[(q, "Z")]
        if xq and zq:
            out = out.with_phase(out.phase + 1)
    return out


def conjugate_all(p: PauliOperator, gates: Iterable[CliffordGate]) -> PauliOperator:
    for g in gates:
        p = conjugate(p, g)
    return p


# ---------------------------------------------------------------------------
# Stabilizer sets
# ---------------------------------------------------------------------------


def symplectic_rank(ops: Sequence[PauliOperator]) -> int:
    if not ops:
        return 0
    n = ops[0].n
    if any(p.n != n for p in ops):
        raise DimensionError("mixed qubit counts")
    return gf2.rank(p.vector for p in ops)


@dataclass(frozen=True)
class StabilizerSet:
    """Ordered list of Pauli generators on a common register.

    Construction only checks that qubit counts agree; call :meth:`validate`
    to enforce commutation, independence and the absence of ``-I``.
    """

    n: int
    generators: tuple[PauliOperator, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.n != self.n:
                raise DimensionError(f"generator {g} does not act on {self.n} qubits")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_strings(cls, strings: Sequence[str], n: int | None = None) -> StabilizerSet:
        gens = [PauliOperator.from_string(s) for s in strings]
        if n is None:
            if not gens:
                raise ValueError("need n for an empty set")
            n = gens[0].n
        return cls(n, tuple(gens))

    @classmethod
    def from_json(cls, arr: list) -> StabilizerSet:
        gens = [PauliOperator.from_json(o) for o in arr]
        if not gens:
            raise ValueError("empty stabilizer array")
        return cls(gens[0].n, tuple(gens))

    def to_json(self) -> list:
        return [g.to_json() for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    @property
    def rank(self) -> int:
        return symplectic_rank(self.generators)

    def is_commuting(self) -> bool:
        gens = self.generators
        return all(commutes(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :])

    def is_independent(self) -> bool:
        return self.rank == len(self.generators)

    def validate(self) -> StabilizerSet:
        if not self.is_commuting():
            raise InvariantError("generators do not commute")
        if not self.is_independent():
            raise InvariantError("generators are not independent")
        for g in self.generators:
            if g.is_identity and g.phase != 0:
                raise InvariantError(f"generator {g} is a non-trivial scalar")
        return self

    def contains(self, p: PauliOperator) -> bool:
        """Group membership of ``p`` with the phase ignored."""
        if p.n != self.n:
            raise DimensionError("qubit count mismatch")
        return gf2.in_span(p.vector, (g.vector for g in self.generators))

    def element(self, p: PauliOperator) -> PauliOperator | None:
        """The signed group element whose letters match ``p``, or ``None``."""
        if p.n != self.n:
            raise DimensionError("qubit count mismatch")
        combo = gf2.solve(p.vector, [g.vector for g in self.generators])
        if combo is None:
            return None
        out = PauliOperator.identity(self.n)
        for i, g in enumerate(self.generators):
            if (combo >> i) & 1:
                out = out * g
        return out

    def canonical(self) -> StabilizerSet:
        return canonical_form(self)

    def same_group(self, other: StabilizerSet) -> bool:
        return canonical_form(self).generators == canonical_form(other).generators


def canonical_form(s: StabilizerSet) -> StabilizerSet:
    """Unique unsigned generating set of the group (ignoring signs).

    Rows are the reduced echelon form of the symplectic vectors
    ``x_0..x_{n-1} z_0..z_{n-1}``, pivoting on the first nonzero column.
    """
    basis, _ = gf2.rref(g.vector for g in s.generators)
    return StabilizerSet(s.n, tuple(PauliOperator.from_vector(s.n, v) for v in basis))


def dumps_stabilizers(s: StabilizerSet) -> str:
    return json.dumps(s.to_json(), sort_keys=True)
