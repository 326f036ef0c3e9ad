"""Invariant-subspace and double-commutator criteria, witness verification
and the Ad_K eigenspace expansion for given rotation parameters."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..config import TOL
from ..errors import DimensionMismatch, InconsistentAngles, NonLocalK
from ..linalg import as_array, commutator, hermitian_eig
from ..local import LocalUnitary, su2_from_axis_angle
from ..pauli import LETTERS, PAULI, pauli_coefficients, single_site
from ._common import matrix_of, n_qubits


def local_basis(n: int):
    """The 3n single-qubit Pauli strings, ordered (qubit, x/y/z)."""
    return [single_site(PAULI[c], k, n) for k in range(n) for c in "xyz"]


def _null_dim(rows: np.ndarray, scale: float) -> int:
    s = np.linalg.svd(rows, compute_uv=False)
    ref = max(s[0] if s.size else 0.0, scale)
    return rows.shape[1] - int(np.sum(s > TOL.rank_rel * ref))


def _eigen_clusters(m: np.ndarray):
    w, v = hermitian_eig(m)
    tol = 1e-9 * np.linalg.norm(m)
    groups, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol:
            groups.append(v[:, start:i])
            start = i
    return groups


def invariant_subspace_check(h, method: str = "blocks") -> bool:
    """True iff some nonzero local Hamiltonian is orthogonal to the commutant of h.

    ``method="blocks"`` uses the eigenspaces V_l of h: the commutant is
    spanned by V_l Y V_l^dag, so a is orthogonal to it iff every
    V_l^dag a V_l vanishes.  ``method="commutant"`` builds the commutant
    from the null space of ad_H in the full Pauli basis (n <= 5).
    """
    m = matrix_of(h)
    n = n_qubits(m)
    basis = local_basis(n)
    if method == "blocks":
        cols = []
        clusters = _eigen_clusters(m)
        for a in basis:
            parts = [(v.conj().T @ a @ v).reshape(-1) for v in clusters]
            z = np.concatenate(parts)
            cols.append(np.concatenate([z.real, z.imag]))
        return _null_dim(np.array(cols).T, np.sqrt(m.shape[0])) > 0
    if method == "commutant":
        return _commutant_route(m, basis) > 0
    raise ValueError(f"unknown method {method!r}")


def _pauli_strings(n: int):
    for word in itertools.product(LETTERS, repeat=n):
        if any(c != "1" for c in word):
            mat = np.ones((1, 1), dtype=complex)
            for c in word:
                mat = np.kron(mat, PAULI[c])
            yield mat


def _commutant_route(m: np.ndarray, basis) -> int:
    n = n_qubits(m)
    if n > 5:
        raise ValueError("commutant route limited to n <= 5")
    strings = list(_pauli_strings(n))
    # real coordinates: X = sum c_P P, [X, H] = 0 is real-linear in c
    ad = np.array([pauli_coefficients(commutator(p, m)).reshape(-1) for p in strings]).T
    ad = np.concatenate([ad.real, ad.imag])
    _, s, vh = np.linalg.svd(ad)
    tol = TOL.rank_rel * max(s[0], 1.0)
    null = vh[int(np.sum(s > tol)):]               # rows: commutant basis coordinates
    # a = sum_b c_b basis_b; Pauli coordinates of local strings are unit vectors
    loc_idx = []
    for k in range(n):
        for c in "xyz":
            word = ["1"] * n
            word[k] = c
            idx = 0
            for ch in word:
                idx = idx * 4 + LETTERS.index(ch)
            loc_idx.append(idx - 1)               # identity string excluded
    gram = null[:, loc_idx]                        # <commutant_i, local_b>
    if gram.shape[0] == 0:
        return len(basis)
    return _null_dim(gram, 1.0)


def local_components(k: np.ndarray):
    """Split a (near) local Hermitian into per-qubit 2x2 parts plus a residual norm."""
    n = n_qubits(k)
    c = pauli_coefficients(k)
    parts = []
    local_norm2 = abs(c[(0,) * n]) ** 2
    for q in range(n):
        part = np.zeros((2, 2), dtype=complex)
        for a, ch in enumerate("xyz", start=1):
            idx = [0] * n
            idx[q] = a
            part += c[tuple(idx)] * PAULI[ch]
            local_norm2 += abs(c[tuple(idx)]) ** 2
        parts.append(part)
    rest = np.sqrt(max(np.sum(np.abs(c) ** 2) - local_norm2, 0.0))
    return parts, rest


def _local_unitary_from_generator(k: np.ndarray, angle: float) -> LocalUnitary:
    """exp(-i angle k) for local Hermitian k, as SU(2) factors (trace part dropped)."""
    parts, _ = local_components(k)
    fs = []
    for p in parts:
        v = np.array([np.real(np.trace(PAULI[c] @ p)) / 2 for c in "xyz"])
        nv = np.linalg.norm(v)
        if nv < 1e-300:
            fs.append(np.eye(2, dtype=complex))
        else:
            fs.append(su2_from_axis_angle(v / nv, 2 * angle * nv))
    return LocalUnitary(fs, check=False)


def double_commutator_witness(h, k):
    """exp(-i pi k) if [k,[k,h]] = h, else None.  Raises NonLocalK."""
    m = matrix_of(h)
    kk = as_array(k)
    if kk.shape != m.shape:
        raise DimensionMismatch("h and k differ in dimension")
    _, rest = local_components(kk)
    if rest > TOL.locality * max(np.linalg.norm(kk) / np.sqrt(kk.shape[0]), 1e-300):
        raise NonLocalK("k has components on multi-qubit Pauli strings")
    dc = commutator(kk, commutator(kk, m))
    if np.linalg.norm(dc - m) >= TOL.inversion_rel * np.linalg.norm(m):
        return None
    K = _local_unitary_from_generator(kk, np.pi)
    res = verify_inversion(m, K)
    assert res < TOL.inversion_rel, f"double-commutator witness failed (residual {res})"
    return K


def double_commutator_check(h, k) -> bool:
    return double_commutator_witness(h, k) is not None


def single_pauli_candidates(n: int):
    """(label, k) for k = sigma/2 on one qubit."""
    for q in range(n):
        for c in "xyz":
            yield f"{c}{q + 1}", single_site(PAULI[c] / 2, q, n)


def verify_inversion(h, k_witness) -> float:
    """||K H K^dag + H||_F / ||H||_F."""
    m = matrix_of(h)
    K = k_witness.full() if isinstance(k_witness, LocalUnitary) else as_array(k_witness)
    if K.shape != m.shape:
        raise DimensionMismatch(f"witness {K.shape} vs Hamiltonian {m.shape}")
    return float(np.linalg.norm(K @ m @ K.conj().T + m) / np.linalg.norm(m))


@dataclass(frozen=True)
class RotationParams:
    axes: tuple[tuple[float, float, float], ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.axes) != len(self.angles):
            raise ValueError("one axis per angle required")
        for a in self.axes:
            if abs(np.linalg.norm(a) - 1) > 1e-12:
                raise ValueError(f"axis {a} is not normalized")

    @property
    def n(self) -> int:
        return len(self.angles)

    def unitary(self) -> LocalUnitary:
        return LocalUnitary.from_axis_angles(self.axes, self.angles)


def axis_eigenvectors(axis):
    """Columns (v_plus, v_minus) with Kv = exp(+-i beta/2) v for K = exp(-i beta/2 n.sigma)."""
    nx, ny, nz = axis
    if nz < -1 + 1e-12:
        # limit n_z -> -1: sigma_z eigenvectors, roles swapped
        return np.array([[1, 0], [0, 1]], dtype=complex)
    s = np.sqrt(2 * (1 + nz))
    v_plus = np.array([-nx + 1j * ny, 1 + nz]) / s     # n.sigma eigenvalue -1
    v_minus = np.array([1 + nz, nx + 1j * ny]) / s     # n.sigma eigenvalue +1
    return np.column_stack([v_plus, v_minus])


def adk_eigenspace_expand(h, params: RotationParams) -> float:
    """Distance of h from the -1 eigenspace of Ad_K, K = K(params), relative to ||h||.

    Per qubit, the operators v_t v_s^dag are eigenoperators of Ad_{K_l}
    with eigenvalue lambda_t conj(lambda_s); tensor products give an
    orthonormal eigenbasis of Ad_K.  Raises InconsistentAngles when no
    product reaches -1, i.e. the angles admit no inverted subspace.
    """
    m = matrix_of(h)
    n = n_qubits(m)
    if params.n != n:
        raise DimensionMismatch(f"{params.n} rotations for {n} qubits")
    w = np.ones((1, 1), dtype=complex)
    lam = np.ones(1, dtype=complex)
    for axis, beta in zip(params.axes, params.angles):
        w = np.kron(w, axis_eigenvectors(axis))
        lam = np.kron(lam, np.exp(1j * beta / 2 * np.array([1, -1])))
    mu = lam[:, None] * lam.conj()[None, :]
    inverted = np.abs(mu + 1) < 1e-9
    if not inverted.any():
        raise InconsistentAngles("rotation angles admit no -1 eigenspace of Ad_K")
    coeff = w.conj().T @ m @ w
    return float(np.linalg.norm(coeff[~inverted]) / np.linalg.norm(m))
