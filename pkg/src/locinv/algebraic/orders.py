"""Quantum orders under F_z and z-rotation inversion.

A Weyl element E_ij is an eigenoperator of ad_{F_z} with eigenvalue
p = (F_z)_ii - (F_z)_jj, so exp(-i phi F_z) multiplies it by exp(-i p phi).
Pauli strings are expanded in the basis {1, z, +, -} with
x = J+ + J-, y = -i (J+ - J-), where J+ = [[0,1],[0,0]] has order +1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..config import TOL
from ..errors import DiagonalIndex, TooManyRows
from ..local import LocalUnitary
from ..pauli import HamiltonianSpec, PauliString, WeylIndex, fz_diagonal_exact
from ._common import ad_residual, matrix_of, n_qubits

# letter -> list of (pm-letter, amplitude)
_PM = {
    "1": [("1", 1.0)],
    "z": [("z", 1.0)],
    "x": [("+", 1.0), ("-", 1.0)],
    "y": [("+", -1j), ("-", 1j)],
}
_ORDER = {"1": 0, "z": 0, "+": 1, "-": -1}


def fz_diagonal(n: int, i: int) -> Fraction:
    """i-th diagonal entry of F_z: half the sum of (-1)^bit over the bits of i-1."""
    return fz_diagonal_exact(n, i)


def weyl_order(idx: WeylIndex) -> Fraction:
    if idx.i == idx.j:
        raise DiagonalIndex(f"E_{idx.i},{idx.j} is diagonal")
    return fz_diagonal(idx.n, idx.i) - fz_diagonal(idx.n, idx.j)


def expand_pm(h) -> dict[str, complex]:
    """Expansion of a spec (or single term) over {1, z, +, -} words.

    Returns word -> amplitude with cancelled words removed.
    """
    if isinstance(h, PauliString):
        terms, half = (h,), False
    else:
        terms, half = h.terms, h.half_spin_convention
    out: dict[str, complex] = {}
    for t in terms:
        c = t.coefficient * (0.5 ** t.weight if half else 1.0)
        for combo in itertools.product(*(_PM[ch] for ch in t.letters)):
            word = "".join(w for w, _ in combo)
            amp = c * np.prod([a for _, a in combo])
            out[word] = out.get(word, 0.0) + amp
    scale = max((abs(v) for v in out.values()), default=0.0)
    return {w: a for w, a in out.items() if abs(a) > 1e-12 * max(scale, 1e-300)}


def word_orders(word: str) -> tuple[int, ...]:
    return tuple(_ORDER[c] for c in word)


def pauli_order_row(term) -> list[tuple[int, ...]]:
    """Distinct per-qubit order rows (p_1..p_n) of the nonvanishing expansion words."""
    rows = {word_orders(w) for w in expand_pm(term)}
    return sorted(rows, reverse=True)


def _entry_rows(m: np.ndarray) -> set:
    """Per-qubit order rows of the nonzero entries of a matrix.

    Entry (i, j) factors as |i_1><j_1| (x) ...; each factor has order
    ((-1)^i_l - (-1)^j_l) / 2.
    """
    n = n_qubits(m)
    ii, jj = np.nonzero(np.abs(m) > 1e-14 * np.max(np.abs(m)))
    rows = set()
    for i, j in zip(ii, jj):
        bi = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        bj = [(j >> (n - 1 - q)) & 1 for q in range(n)]
        rows.add(tuple(((-1) ** x - (-1) ** y) // 2 for x, y in zip(bi, bj)))
    return rows


def order_rows(h) -> tuple[set, np.ndarray]:
    """Order rows of ``h`` and its dense matrix.

    Specs are expanded over {1, z, +, -}; plain matrices (Weyl elements
    included) are read entrywise.
    """
    if isinstance(h, PauliString):
        h = HamiltonianSpec(h.n, (h,))
    if isinstance(h, HamiltonianSpec):
        return set(pauli_order_row(h)), matrix_of(h)
    m = matrix_of(h)
    return _entry_rows(m), m


def joint_z_unitary(n: int, phi: float) -> LocalUnitary:
    """exp(-i phi F_z) as a product of single-qubit z rotations."""
    return LocalUnitary.from_axis_angles([(0, 0, 1)] * n, [phi] * n)


def joint_z_inversion(h):
    """Smallest angle phi = pi/r (r = 2n..1) with exp(-i phi F_z) inverting h, or None.

    ``h`` may be a spec, or any square matrix (Weyl elements included), in
    which case the orders are read off its nonzero entries.
    """
    rows, m = order_rows(h)
    orders = {sum(r) for r in rows}
    n = n_qubits(m)
    if 0 in orders:
        return None
    for r in range(2 * n, 0, -1):
        if all((p % r == 0) and ((p // r) % 2 != 0) for p in orders):
            phi = np.pi / r
            if ad_residual(m, joint_z_unitary(n, phi).full()) < TOL.inversion_rel:
                return phi
    return None


@dataclass(frozen=True)
class ZRotationSolution:
    angles: tuple[float, ...]
    sign_choice: tuple[int, ...]
    residual: float            # max_lambda |P phi - s pi| mod 2pi
    matrix_residual: float     # ||K H K^dag + H|| / ||H||

    def unitary(self) -> LocalUnitary:
        return individual_z_unitary(self.angles)


def individual_z_unitary(angles) -> LocalUnitary:
    return LocalUnitary.from_axis_angles([(0, 0, 1)] * len(angles), list(angles))


def dedup_rows(rows) -> np.ndarray:
    """Rows equal up to sign are merged (their +-pi constraints coincide mod 2pi)."""
    out = []
    for r in sorted(rows, reverse=True):
        neg = tuple(-x for x in r)
        if r not in out and neg not in out:
            out.append(r)
    return np.array(out, dtype=float)


def order_matrix(h) -> np.ndarray:
    return dedup_rows(order_rows(h)[0])


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def individual_z_inversion(h, max_rows: int = 20):
    """Individual z rotations phi_l with sum_l p_l phi_l = +-pi for every order row.

    Sign vectors are tried in lexicographic order (+1 before -1), each
    solved by least squares on the principal branch and accepted only if
    the exact matrix condition holds.
    """
    rows, m = order_rows(h)
    P = dedup_rows(rows)
    if P.size == 0 or np.any(np.all(P == 0, axis=1)):
        return None
    if P.shape[0] > max_rows:
        raise TooManyRows(f"{P.shape[0]} order rows exceed the limit of {max_rows}")
    pinv = np.linalg.pinv(P)
    for s in itertools.product((1, -1), repeat=P.shape[0]):
        rhs = np.pi * np.array(s, dtype=float)
        phi = pinv @ rhs
        res = float(np.max(np.abs(_wrap(P @ phi - rhs))))
        if res >= 1e-9:
            continue
        phi = tuple(float(x) for x in phi)
        mres = ad_residual(m, individual_z_unitary(phi).full())
        if mres < TOL.inversion_rel:
            return ZRotationSolution(phi, tuple(s), res, mres)
    return None
