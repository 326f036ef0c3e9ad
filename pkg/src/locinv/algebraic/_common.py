from __future__ import annotations

import numpy as np

from ..errors import ZeroHamiltonian
from ..linalg import as_array
from ..pauli import HamiltonianSpec, build_matrix


def matrix_of(h, allow_zero: bool = False) -> np.ndarray:
    """Dense matrix of a spec or array-like; rejects the zero operator."""
    m = build_matrix(h) if isinstance(h, HamiltonianSpec) else as_array(h)
    if not allow_zero and not np.any(np.abs(m) > 0):
        raise ZeroHamiltonian("the zero Hamiltonian is not a valid input")
    return m


def n_qubits(m: np.ndarray) -> int:
    return m.shape[0].bit_length() - 1


def ad_residual(h: np.ndarray, k: np.ndarray) -> float:
    """||K H K^dag + H||_F / ||H||_F for a full unitary K."""
    return float(np.linalg.norm(k @ h @ k.conj().T + h) / np.linalg.norm(h))
