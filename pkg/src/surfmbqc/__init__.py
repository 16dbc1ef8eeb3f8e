"""Stabilizer simulation of surface codes prepared by measuring cluster states."""

from __future__ import annotations

__version__ = "0.1.0"

from .codes import (
    CodeParameters,
    LogicalPair,
    NoLogicalSpaceError,
    centralizer_table,
    code_parameters,
    distance,
    is_detectable,
    knill_laflamme_check,
    logical_operators,
    logical_qubits,
    perfect_code_check,
    syndrome,
)
from .homology import Chain, ChainComplex, h1_rank, homologically_equivalent
from .lattice import (
    DATA,
    MEASURE_X,
    MEASURE_Z,
    CliffordCircuit,
    Graph,
    cluster_stabilizers,
    cnot_baseline,
    square_lattice,
)
from .measurement import (
    ImpossibleOutcomeError,
    Measurement,
    MeasurementArray,
    PipelineResult,
    evolve,
    remove_z_qubits,
    run_pipeline,
    surface_pattern,
)
from .pauli import (
    CliffordGate,
    DimensionError,
    InvariantError,
    PauliOperator,
    StabilizerSet,
    canonical_form,
    commutes,
    conjugate,
    multiply,
    symplectic_product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
