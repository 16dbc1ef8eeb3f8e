"""Stabilizer evolution of a cluster state under single-qubit Pauli measurements.

All measurement outcomes are taken to be +1, so the post-measurement
generators carry exact signs with no byproduct correction.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf2
from .lattice import (
    DATA,
    MEASURE_X,
    MEASURE_Z,
    Graph,
    cluster_stabilizers,
    cnot_baseline,
    square_lattice,
    vertices_with,
)
from .pauli import (
    CliffordGate,
    DimensionError,
    InvariantError,
    PauliOperator,
    StabilizerSet,
    commutes,
    conjugate,
)

log = logging.getLogger(__name__)


class ImpossibleOutcomeError(ValueError):
    """Forcing a +1 outcome contradicts the current stabilizer group."""


@dataclass(frozen=True)
class Measurement:
    qubit: int
    basis: str

    def __post_init__(self):
        if self.basis not in ("X", "Y", "Z"):
            raise ValueError(f"basis must be X, Y or Z, got {self.basis!r}")
        if self.qubit < 0:
            raise ValueError("negative qubit index")

    def operator(self, n: int) -> PauliOperator:
        return PauliOperator.single(n, self.qubit, self.basis)


@dataclass(frozen=True)
class MeasurementArray:
    instructions: tuple[Measurement, ...]

    def __post_init__(self):
        ins = tuple(self.instructions)
        seen = set()
        for m in ins:
            if m.qubit in seen:
                raise ValueError(f"qubit {m.qubit} measured twice")
            seen.add(m.qubit)
        object.__setattr__(self, "instructions", ins)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, str]]) -> MeasurementArray:
        return cls(tuple(Measurement(q, b) for q, b in pairs))

    @classmethod
    def from_json(cls, arr: list) -> MeasurementArray:
        return cls.from_pairs((o["qubit"], o["basis"]) for o in arr)

    def to_json(self) -> list:
        return [{"qubit": m.qubit, "basis": m.basis} for m in self.instructions]

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    @property
    def qubits(self) -> list[int]:
        return [m.qubit for m in self.instructions]

    def operators(self, n: int) -> list[PauliOperator]:
        return [m.operator(n) for m in self.instructions]

    def check(self, n: int) -> None:
        for m in self.instructions:
            if m.qubit >= n:
                raise DimensionError(f"measured qubit {m.qubit} outside {n}-qubit register")


def surface_pattern(n: int) -> MeasurementArray:
    """Z on every measure-Z site, then X on every measure-X site, ascending."""
    _, roles = square_lattice(n)
    pairs = [(q, "Z") for q in vertices_with(roles, MEASURE_Z)]
    pairs += [(q, "X") for q in vertices_with(roles, MEASURE_X)]
    return MeasurementArray.from_pairs(pairs)


def _prune(gens: list[PauliOperator]) -> tuple[list[PauliOperator], int]:
    out, seen, dropped = [], set(), 0
    for g in gens:
        if g.is_identity:
            if g.phase != 0:
                raise ImpossibleOutcomeError(f"evolution produced the scalar {g}")
            dropped += 1
            continue
        if g.vector in seen or gf2.in_span(g.vector, (h.vector for h in out)):
            dropped += 1
            continue
        seen.add(g.vector)
        out.append(g)
    return out, dropped


def evolve(
    s: StabilizerSet,
    m: MeasurementArray,
    *,
    include_measurements: bool = False,
    trace: list | None = None,
) -> StabilizerSet:
    """Push a stabilizer set through an ordered list of +1 Pauli measurements.

    For each instruction the generators are split into commuting and
    anticommuting lists. Consecutive products of the anticommuting ones are
    appended to the commuting list (a single anticommuting generator is
    dropped). Any commuting generator carrying the measured letter at the
    measured site is then multiplied by the measurement operator, which clears
    that site. Identities and dependent products are pruned after each step.

    With ``include_measurements`` the measurement operators are appended to
    the result. When ``trace`` is a list, one dict per instruction is appended
    to it.
    """
    m.check(s.n)
    n = s.n
    current = list(s.generators)
    for step, ins in enumerate(m):
        meas = ins.operator(n)
        k_c = [g for g in current if commutes(g, meas)]
        k_ac = [g for g in current if not commutes(g, meas)]
        if not k_ac:
            elem = StabilizerSet(n, tuple(current)).element(meas)
            if elem is not None and elem.phase != 0:
                raise ImpossibleOutcomeError(
                    f"{ins.basis} on qubit {ins.qubit} is fixed to -1 by the current group"
                )
        products = [k_ac[l] * k_ac[l + 1] for l in range(len(k_ac) - 1)]
        k_c = k_c + products
        nxt, multiplied, other_letter = [], 0, 0
        for g in k_c:
            letter = g.letter(ins.qubit)
            if letter == ins.basis:
                nxt.append(g * meas)
                multiplied += 1
            else:
                if letter != "I":
                    # unreachable for single-site measurements; kept for audit
                    other_letter += 1
                    log.warning("generator %s keeps letter %s at measured qubit %d", g, letter, ins.qubit)
                nxt.append(g)
        current, pruned = _prune(nxt)
        if trace is not None:
            trace.append(
                {
                    "step": step,
                    "qubit": ins.qubit,
                    "basis": ins.basis,
                    "commuting": len(k_c) - len(products),
                    "anticommuting": len(k_ac),
                    "products": len(products),
                    "multiplied": multiplied,
                    "other_letter": other_letter,
                    "pruned": pruned,
                    "generators": len(current),
                }
            )
    if include_measurements:
        current = current + m.operators(n)
    return StabilizerSet(n, tuple(current))


def trace_to_jsonl(trace: Sequence[dict]) -> str:
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in trace)


def remove_z_qubits(g: Graph, victims: Iterable[int]) -> tuple[Graph, StabilizerSet]:
    """Cluster stabilizers left after Z-measuring ``victims`` (outcomes +1).

    The returned graph keeps the original vertex labels; victims stay in it as
    isolated vertices so that the generators can be written on the original
    register. One generator is returned per surviving vertex, in ascending
    order, with identity on every victim.
    """
    victims = set(victims)
    for v in victims:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"unknown vertex {v}")
    sub = g.without(victims)
    full = cluster_stabilizers(sub)
    gens = tuple(k for a, k in enumerate(full) if a not in victims)
    return sub, StabilizerSet(g.vertex_count, gens)


def restrict_to_data(
    s: StabilizerSet, measured: Iterable[int]
) -> tuple[StabilizerSet, list[int]]:
    """Drop measured columns and renumber the rest in ascending order.

    Returns the restricted set and the index map (new index -> old index).
    """
    measured = set(measured)
    keep = [q for q in range(s.n) if q not in measured]
    gens = []
    for g in s:
        bad = [q for q in measured if q < s.n and g.letter(q) != "I"]
        if bad:
            raise InvariantError(f"generator {g} acts on measured qubits {sorted(bad)}")
        x = z = 0
        for new, old in enumerate(keep):
            x |= ((g.x >> old) & 1) << new
            z |= ((g.z >> old) & 1) << new
        gens.append(PauliOperator(len(keep), x, z, g.phase))
    return StabilizerSet(len(keep), tuple(gens)), keep


def hadamard_frame(s: StabilizerSet, outputs: Iterable[int]) -> StabilizerSet:
    """Conjugate every generator by H on each qubit in ``outputs``."""
    gates = [CliffordGate("H", (q,)) for q in sorted(set(outputs))]
    gens = []
    for g in s:
        for h in gates:
            g = conjugate(g, h)
        gens.append(g)
    return StabilizerSet(s.n, tuple(gens))


# ---------------------------------------------------------------------------
# Surface-code pipeline
# ---------------------------------------------------------------------------


def local_checks(
    full: StabilizerSet, supports: Sequence[Sequence[int]]
) -> list[PauliOperator | None]:
    """For each support, the signed group element acting non-trivially on exactly it.

    Uniform candidates (all X, all Y, all Z) are tried before mixed ones, and
    mixed ones in the order X < Y < Z per site; the first group member wins.
    Preferring uniform letters keeps checks pure when the group also holds
    their products with a logical operator on the same support. ``None`` marks
    a support with no such element.
    """
    out = []
    for supp in supports:
        hit = None
        cands = sorted(itertools.product("XYZ", repeat=len(supp)), key=lambda t: len(set(t)))
        for letters in cands:
            cand = PauliOperator.from_sites(full.n, dict(zip(supp, letters)))
            hit = full.element(cand)
            if hit is not None:
                break
        out.append(hit)
    return out


def split_code(
    full: StabilizerSet, supports: Sequence[Sequence[int]]
) -> tuple[StabilizerSet, list[PauliOperator]]:
    """Split a full-rank group into local check generators and the remainder.

    Returns the code (independent local checks) and the generators of
    ``full`` that fall outside the span of the checks, which represent the
    logical state that was prepared.
    """
    checks = local_checks(full, supports)
    missing = [tuple(s) for s, c in zip(supports, checks) if c is None]
    if missing:
        raise InvariantError(f"no local group element on supports {missing}")
    basis: list[PauliOperator] = []
    for c in checks:
        if not gf2.in_span(c.vector, (b.vector for b in basis)):
            basis.append(c)
    extra = []
    span = [b.vector for b in basis]
    for g in full:
        if not gf2.in_span(g.vector, span):
            extra.append(g)
            span.append(g.vector)
    return StabilizerSet(full.n, tuple(basis)), extra


@dataclass(frozen=True)
class PipelineResult:
    size: int
    entangler: str
    graph: Graph
    roles: dict
    pattern: MeasurementArray
    initial: StabilizerSet
    evolved: StabilizerSet
    restricted: StabilizerSet
    output: StabilizerSet
    index_map: list
    code: StabilizerSet
    logical_state: list

    @property
    def data_qubits(self) -> list[int]:
        return self.index_map


def run_pipeline(
    n: int,
    entangler: str = "cz",
    *,
    pattern: MeasurementArray | None = None,
    frame: bool = True,
    trace: list | None = None,
) -> PipelineResult:
    """Cluster (or CNOT) resource on an ``n x n`` lattice, measured into a surface code.

    For ``entangler="cz"`` the data qubits are put through a Hadamard frame
    unless ``frame`` is false; the CNOT resource is already in the
    gate-model frame and is never reframed.
    """
    g, roles = square_lattice(n)
    if entangler == "cz":
        initial = cluster_stabilizers(g)
    elif entangler == "cnot":
        initial = cnot_baseline(n)
    else:
        raise ValueError(f"entangler must be 'cz' or 'cnot', got {entangler!r}")
    pattern = pattern if pattern is not None else surface_pattern(n)
    evolved = evolve(initial, pattern, trace=trace)
    restricted, index_map = restrict_to_data(evolved, pattern.qubits)
    output = restricted
    if entangler == "cz" and frame:
        output = hadamard_frame(restricted, range(restricted.n))
    position = {old: new for new, old in enumerate(index_map)}
    adj = g.adjacency()
    supports = []
    for mq in pattern.qubits:
        supp = sorted(position[d] for d in adj[mq] if roles[d] == DATA and d in position)
        if supp:
            supports.append(supp)
    code, extra = split_code(output, supports)
    return PipelineResult(
        size=n,
        entangler=entangler,
        graph=g,
        roles=roles,
        pattern=pattern,
        initial=initial,
        evolved=evolved,
        restricted=restricted,
        output=output,
        index_map=index_map,
        code=code,
        logical_state=extra,
    )
