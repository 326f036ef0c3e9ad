"""Membership of iH in the +-1 eigenspaces of four standard Cartan involutions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import TOL
from ..errors import OddDimension
from ..pauli import PAULI
from ._common import matrix_of, n_qubits

INVOLUTIONS = ("CC", "AI", "AII", "AIII")


@dataclass(frozen=True)
class CartanLabel:
    involution: str
    membership: str     # "k", "p" or "mixed"


def involution(which: str, x: np.ndarray) -> np.ndarray:
    """theta(X) for one of CC, AI, AII, AIII."""
    dim = x.shape[0]
    if which == "CC":
        y = np.ones((1, 1), dtype=complex)
        for _ in range(n_qubits(x)):
            y = np.kron(y, -1j * PAULI["y"])
        return y @ x.conj() @ y.conj().T
    if which == "AI":
        return x.conj()
    if which == "AII":
        if dim % 2:
            raise OddDimension("AII needs an even dimension")
        h = dim // 2
        j = np.zeros((dim, dim), dtype=complex)
        j[:h, h:] = np.eye(h)
        j[h:, :h] = -np.eye(h)
        return j @ x.conj() @ np.linalg.inv(j)
    if which == "AIII":
        if dim % 2:
            raise OddDimension("AIII with p = q needs an even dimension")
        d = np.ones(dim)
        d[dim // 2:] = -1
        return d[:, None] * x * d[None, :]
    raise ValueError(f"unknown involution {which!r}")


def cartan_classify(h, which: str) -> CartanLabel:
    x = 1j * matrix_of(h)
    t = involution(which, x)
    tol = TOL.membership * np.linalg.norm(x)
    if np.linalg.norm(t - x) <= tol:
        return CartanLabel(which, "k")
    if np.linalg.norm(t + x) <= tol:
        return CartanLabel(which, "p")
    return CartanLabel(which, "mixed")


def cartan_row(h) -> dict[str, str]:
    return {w: cartan_classify(h, w).membership for w in INVOLUTIONS}
