"""Spectrum pairing: the necessary condition for Ad_K(H) = -H with any unitary K."""
from __future__ import annotations

import numpy as np

from ..config import TOL
from ..linalg import hermitian_eig
from ._common import matrix_of


def spectrum_pairing_check(h, rel: float = TOL.pairing_rel):
    """Return ``(paired, spectrum)``.

    ``paired`` is True iff the sorted spectrum equals its own negation
    within ``rel * ||h||_F``, i.e. nonzero eigenvalues come in +/- pairs.
    """
    m = matrix_of(h)
    w, _ = hermitian_eig(m)
    w = np.sort(w)
    tol = rel * np.linalg.norm(m)
    return bool(np.max(np.abs(w + w[::-1])) <= tol), w


def xyz_eigenvalues(alpha: float, beta: float, gamma: float):
    """Closed-form spectrum of alpha xx + beta yy + gamma zz."""
    return (alpha + beta - gamma, -alpha + beta + gamma,
            alpha - beta + gamma, -alpha - beta - gamma)
