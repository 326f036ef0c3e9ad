"""Dense complex matrix kernel.

Plain ``numpy`` arrays are the working currency of the package.  The
:class:`OperatorMatrix` wrapper is available when a checked, read-only
operator with a declared role is wanted; every function below accepts
either form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, NonSkewInput

ROLES = ("hermitian", "skew_hermitian", "unitary", "general")


def _is_power_of_two(d: int) -> bool:
    return d >= 2 and (d & (d - 1)) == 0


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Square ``2^n x 2^n`` complex matrix tagged with its role.

    The role is validated on construction and the underlying array is
    made read-only.
    """

    data: np.ndarray
    role: str = "general"

    def __post_init__(self):
        a = np.array(self.data, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or not _is_power_of_two(a.shape[0]):
            raise DimensionMismatch(f"expected a 2^n x 2^n matrix, got shape {a.shape}")
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.role == "hermitian" and np.max(np.abs(a - a.conj().T)) >= TOL.hermitian:
            raise ValueError("matrix is not Hermitian")
        if self.role == "skew_hermitian" and not is_skew(a):
            raise NonSkewInput("matrix is not skew-Hermitian")
        if self.role == "unitary" and not is_unitary(a):
            raise ValueError("matrix is not unitary")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)


def as_array(m) -> np.ndarray:
    if isinstance(m, OperatorMatrix):
        return m.data
    return np.asarray(m, dtype=complex)


def is_skew(g, rel: float = TOL.skew_rel) -> bool:
    g = as_array(g)
    return np.linalg.norm(g + g.conj().T) <= rel * max(np.linalg.norm(g), 1.0)


def is_unitary(u, tol: float = TOL.unitary) -> bool:
    u = as_array(u)
    return np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])) < tol


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor = qubit 1."""
    return reduce(np.kron, (as_array(f) for f in factors))


def expm_skew(g) -> np.ndarray:
    """exp(g) for skew-Hermitian ``g`` via the eigendecomposition of ``i g``."""
    g = as_array(g)
    if not is_skew(g):
        raise NonSkewInput("expm_skew requires a skew-Hermitian generator")
    h = 1j * g
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    # exp(g) = exp(-i h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def hermitian_eig(h):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix."""
    h = as_array(h)
    return np.linalg.eigh((h + h.conj().T) / 2)


def vec(m) -> np.ndarray:
    """Column-stacking vectorization, so vec(A X B) = (B^T kron A) vec(X)."""
    return as_array(m).reshape(-1, order="F")


def unvec(v, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    return v.reshape(dim, dim, order="F")


def frobenius_inner(a, b) -> complex:
    """tr(A^dag B)."""
    a, b = as_array(a), as_array(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def commutator(a, b) -> np.ndarray:
    a, b = as_array(a), as_array(b)
    return a @ b - b @ a
