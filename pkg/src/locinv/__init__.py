"""Local invertibility of multi-qubit interaction Hamiltonians."""
from .config import TOL, Tolerances
from .flows import FlowConfig, FlowResult, local_c_range_segment, project_local, type1_flow, type2_flow
from .linalg import OperatorMatrix, expm_skew, frobenius_inner, kron, vec
from .local import LocalUnitary
from .pauli import (
    CouplingGraph,
    Edge,
    HamiltonianSpec,
    PauliString,
    WeylIndex,
    build_matrix,
    collective_fz,
    graph_to_hamiltonian,
    parse_graph,
    parse_hamiltonian,
    render,
    weyl_matrix,
)
from .pipeline import Classification, decide

__version__ = "0.1.0"
