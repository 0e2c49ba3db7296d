"""Clifford circuit toolkit: stabilizer simulation, reachable-state analysis,
CNF/SMT encoding, and SAT-based miter equivalence checking."""

from .circuit import (
    Circuit,
    CircuitParseError,
    Gate,
    GateKind,
    decompose_to_generators,
    emit_circuit,
    parse_circuit,
    random_clifford_circuit,
    remove_random_gate,
)
from .stabilizer import (
    PauliLabel,
    Tableau,
    apply_circuit,
    apply_cnot,
    apply_gate,
    apply_h,
    apply_s,
    canonicalize,
    row_multiply,
    tableau_from_basis_state,
    to_statevector,
)
from .analysis import (
    AnalysisResult,
    StateRegistry,
    TransitionTable,
    joint_analysis,
    structural_analysis,
    unique_state_count,
)
from .encoder import (
    CnfFormula,
    Encoding,
    SymbolTable,
    emit_dimacs,
    emit_smt2,
    encode_circuit,
)
from .solver import (
    CdclSolver,
    ProcessSolver,
    SolverError,
    SolverInterface,
    SolverResult,
    enumerate_models,
)
from .equivalence import (
    CheckStats,
    Counterexample,
    EncodingIntegrityError,
    EquivalenceResult,
    MiterEncoding,
    Verdict,
    build_miter,
    check_equivalence,
    decode_counterexample,
    generate_inputs,
)

__version__ = "0.1.0"
