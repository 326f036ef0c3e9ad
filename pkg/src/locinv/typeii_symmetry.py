"""Two-qubit pointwise inversion by superoperator symmetry.

A pair of local unitaries acts on vec(M) as K2^T (x) K1, and on the
split vector vec(Re M) (+) vec(Im M) as [[Re, -Im], [Im, Re]].  Taking
the adjoint is the real map [[T, 0], [0, -T]] with T the vec-transposition
permutation.  A pair inverts U = exp(-i tau H) pointwise iff K1 U K2 = U^dag,
which for the 16 maximal-overlap patterns below reduces to symmetry
templates on the entries of M.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import SymmetryViolation, WrongQubitCount
from .linalg import as_array, vec
from .local import LocalUnitary, reproject_su2
from .pauli import PAULI

FAMILIES = "ABCD"
SIGNS = ("++++", "+--+", "-++-", "----")

# transposition fixed points and swaps, 0-based vec positions per letter
SLOTS = {
    "A": ((0, 0), (5, 5), (10, 10), (15, 15)),
    "B": ((1, 4), (4, 1), (11, 14), (14, 11)),
    "C": ((2, 8), (8, 2), (7, 13), (13, 7)),
    "D": ((3, 12), (12, 3), (6, 9), (9, 6)),
}

# printed base patterns: row r has sign s[r] in column perm[r]
_PERM_A = list(range(16))
_PERM_B = [5, 4, 7, 6, 1, 0, 3, 2, 13, 12, 15, 14, 9, 8, 11, 10]
_PERM_C = [10, 11, 8, 9, 14, 15, 12, 13, 2, 3, 0, 1, 6, 7, 4, 5]
_PERM_D = list(range(15, -1, -1))
_PRINTED = {
    ("A", "++++"): (_PERM_A, [1, -1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1, -1, 1, -1, 1]),
    ("A", "+--+"): (_PERM_A, [1, -1, 1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, 1, -1, 1]),
    ("B", "++++"): (_PERM_B, [-1, 1, 1, -1, 1, -1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1]),
    ("B", "+--+"): (_PERM_B, [1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1]),
    ("C", "++++"): (_PERM_C, [-1, 1, 1, -1, 1, -1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1]),
    ("C", "+--+"): (_PERM_C, [-1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1]),
    ("D", "++++"): (_PERM_D, [-1, 1, -1, 1, 1, -1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1]),
    ("D", "+--+"): (_PERM_D, [1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1]),
}
_NEGATIVE_OF = {"----": "++++", "-++-": "+--+"}


@dataclass(frozen=True)
class SubtypeId:
    family: str
    signs: str

    def __post_init__(self):
        if self.family not in FAMILIES or self.signs not in SIGNS:
            raise ValueError(f"invalid subtype {self.family}{self.signs}")

    @classmethod
    def parse(cls, text: str) -> "SubtypeId":
        text = text.replace("_", "").replace("{", "").replace("}", "")
        return cls(text[0], text[1:])

    def __str__(self):
        return f"{self.family}{self.signs}"


def all_subtypes():
    return [SubtypeId(f, s) for f in FAMILIES for s in SIGNS]


@dataclass(frozen=True, eq=False)
class RealSuperoperator:
    """32 x 32 real matrix acting on vec(Re M) (+) vec(Im M)."""

    matrix: np.ndarray
    kind: str = "unitary"          # unitary | adjoining | coincidence

    def __post_init__(self):
        a = np.array(self.matrix, dtype=float)
        if a.shape != (32, 32):
            raise ValueError("real superoperators on 4x4 matrices are 32 x 32")
        p, q, r, s = a[:16, :16], a[:16, 16:], a[16:, :16], a[16:, 16:]
        if self.kind == "unitary":
            if not (np.array_equal(p, s) and np.array_equal(q, -r)):
                raise ValueError("not of the form [[Re, -Im], [Im, Re]]")
            if np.linalg.norm(a @ a.T - np.eye(32)) > TOL.unitary:
                raise ValueError("unitary-induced superoperator must be orthogonal")
        else:
            if np.any(q) or np.any(r) or not np.array_equal(p, -s):
                raise ValueError("expected block form [[X, 0], [0, -X]]")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def block(self) -> np.ndarray:
        """Top-left 16 x 16 block (K_Re, T or C)."""
        return self.matrix[:16, :16]

    def apply(self, m) -> np.ndarray:
        return unsplit(self.matrix @ vec_split(m))


def vec_split(m) -> np.ndarray:
    v = vec(m)
    return np.concatenate([v.real, v.imag])


def unsplit(x) -> np.ndarray:
    v = x[:16] + 1j * x[16:]
    return v.reshape(4, 4, order="F")


def _full(k) -> np.ndarray:
    if isinstance(k, LocalUnitary):
        if k.n != 2:
            raise WrongQubitCount(f"expected two qubits, got {k.n}")
        return k.full()
    k = as_array(k)
    if k.shape != (4, 4):
        raise WrongQubitCount(f"expected a 4 x 4 operator, got {k.shape}")
    return k


def pair_superop(k1, k2) -> np.ndarray:
    """Complex superoperator K2^T (x) K1 with vec(K1 M K2) = (K2^T (x) K1) vec(M)."""
    return np.kron(_full(k2).T, _full(k1))


def real_superop_of_pair(k1, k2) -> RealSuperoperator:
    s = pair_superop(k1, k2)
    return RealSuperoperator(np.block([[s.real, -s.imag], [s.imag, s.real]]))


def transposition_matrix() -> np.ndarray:
    t = np.zeros((16, 16))
    for r in range(4):
        for c in range(4):
            t[c + 4 * r, r + 4 * c] = 1.0
    return t


def adjoining_superop() -> RealSuperoperator:
    t = transposition_matrix()
    z = np.zeros((16, 16))
    return RealSuperoperator(np.block([[t, z], [z, -t]]), kind="adjoining")


def coincidence(k_hat: RealSuperoperator) -> RealSuperoperator:
    """Hadamard product with the adjoining superoperator."""
    return RealSuperoperator(k_hat.matrix * adjoining_superop().matrix, kind="coincidence")


def coincidence_count(k_hat: RealSuperoperator, tol: float = 1e-12) -> int:
    return int(np.sum(np.abs(coincidence(k_hat).block) > tol))


def _signed_permutation(perm, signs) -> np.ndarray:
    m = np.zeros((16, 16))
    for r, (c, s) in enumerate(zip(perm, signs)):
        m[r, c] = s
    return m


def subtype_pattern(sid: SubtypeId) -> np.ndarray:
    """The printed 16 x 16 K_Re pattern of a subtype."""
    sid = SubtypeId.parse(sid) if isinstance(sid, str) else sid
    if sid.signs in _NEGATIVE_OF:
        return -subtype_pattern(SubtypeId(sid.family, _NEGATIVE_OF[sid.signs]))
    return _signed_permutation(*_PRINTED[(sid.family, sid.signs)])


def classify_pattern(block: np.ndarray, tol: float = 1e-12) -> SubtypeId | None:
    """Subtype whose four coincidence slots are all occupied by ``block``.

    Slot signs are read in increasing column order; the slot entries of
    T are +1, so the coincidence signs are the entry signs.
    """
    for fam, slots in SLOTS.items():
        vals = [block[r, c] for r, c in slots]
        if all(abs(v) > tol for v in vals):
            order = sorted(range(4), key=lambda i: slots[i][1])
            signs = "".join("+" if vals[i] > 0 else "-" for i in order)
            if signs in SIGNS:
                return SubtypeId(fam, signs)
    return None


# --- realizations: real Pauli-type local pairs ------------------------------

_SU2_PAULI = [np.eye(2, dtype=complex)] + [-1j * PAULI[c] for c in "xyz"]


def _pauli_type_pairs():
    for e, a, b, c, d in itertools.product((1, -1), *[range(4)] * 4):
        k1 = LocalUnitary([e * _SU2_PAULI[a], _SU2_PAULI[b]], check=False)
        k2 = LocalUnitary([_SU2_PAULI[c], _SU2_PAULI[d]], check=False)
        yield k1, k2


def realizations(sid: SubtypeId):
    """Local pairs (K1, K2, block) whose real pattern falls into class ``sid``.

    The printed pattern comes first, followed by the distinct real
    Pauli-type pairs of the class; their templates differ in the signs
    of the conjugate couplings.
    """
    sid = SubtypeId.parse(sid) if isinstance(sid, str) else sid
    return _REALIZATIONS[(sid.family, sid.signs)]


def _build_realizations():
    table = {}
    for sid in all_subtypes():
        block = subtype_pattern(sid)
        table[(sid.family, sid.signs)] = [(*factor_local_pair(block), block)]
    for k1, k2 in _pauli_type_pairs():
        s = pair_superop(k1, k2)
        if np.any(np.abs(s.imag) > 1e-12):
            continue
        block = np.round(s.real)
        sid = classify_pattern(block)
        if sid is None:
            continue
        bucket = table[(sid.family, sid.signs)]
        if not any(np.array_equal(block, b) for _, _, b in bucket):
            bucket.append((k1, k2, block))
    return table


# --- templates ---------------------------------------------------------------

@dataclass(frozen=True)
class Template:
    """Entry constraints on M for K_Re vec(M) = vec(M^dag) with a fixed pattern.

    Positions are 0-based (row, col).  ``couplings`` holds (a, b, s) meaning
    M[b] = s * conj(M[a]).
    """

    zeros: frozenset
    real: frozenset
    imaginary: frozenset
    couplings: tuple


def _pos(q: int) -> tuple[int, int]:
    return (q % 4, q // 4)


def template_of(block: np.ndarray) -> Template:
    perm = [int(np.nonzero(row)[0][0]) for row in block]
    sign = [int(np.sign(block[r, perm[r]])) for r in range(16)]
    tau = [(q % 4) * 4 + q // 4 for q in range(16)]
    # relation per row q: conj(v[tau q]) = s_q v[perm q]
    rel = {}
    zeros, real, imag = set(), set(), set()
    for q in range(16):
        a, b, s = tau[q], perm[q], sign[q]
        if a == b:
            (real if s > 0 else imag).add(_pos(a))
            continue
        # v[b] = s conj(v[a])
        rel.setdefault(frozenset((a, b)), []).append((a, b, s))
    couplings = []
    for key, items in rel.items():
        a, b, s = items[0]
        consistent = all(
            (x == a and s2 == s) or (x == b and s2 == s) for x, _, s2 in items
        )
        if not consistent:
            zeros.update({_pos(a), _pos(b)})
        else:
            couplings.append((_pos(a), _pos(b), s))
    return Template(frozenset(zeros), frozenset(real - zeros), frozenset(imag - zeros),
                    tuple(sorted(couplings)))


def _template_ok(m: np.ndarray, t: Template, rel_tol: float) -> bool:
    scale = max(np.linalg.norm(m), 1e-300)
    if any(abs(m[p]) >= TOL.symmetry_zero * scale for p in t.zeros):
        return False
    if any(abs(m[p].imag) > rel_tol * scale for p in t.real):
        return False
    if any(abs(m[p].real) > rel_tol * scale for p in t.imaginary):
        return False
    return all(abs(m[b] - s * np.conj(m[a])) <= rel_tol * scale for a, b, s in t.couplings)


def matching_realization(m, sid, rel_tol: float = 1e-10):
    """First realization (K1, K2, block) whose template m satisfies, or None."""
    m = as_array(m)
    for real in realizations(sid):
        if _template_ok(m, template_of(real[2]), rel_tol):
            return real
    return None


def symmetry_class_test(m, sid, rel_tol: float = 1e-10) -> bool:
    return matching_realization(m, sid, rel_tol) is not None


def adjoint_map_residual(m, block: np.ndarray) -> float:
    """||K_R vec-split(m) - vec-split(m^dag)|| / ||m||_F for a real pattern block."""
    m = as_array(m)
    kr = np.block([[block, np.zeros((16, 16))], [np.zeros((16, 16)), block]])
    return float(np.linalg.norm(kr @ vec_split(m) - vec_split(m.conj().T)) / np.linalg.norm(m))


def symmetry_maps_to_adjoint(m, sid) -> float:
    real = matching_realization(m, sid)
    if real is None:
        raise SymmetryViolation(f"matrix does not fit the {sid} template")
    return adjoint_map_residual(m, real[2])


def sample_template(block: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random M with K_Re vec(M) = vec(M^dag), from the real null space."""
    kr = np.block([[block, np.zeros((16, 16))], [np.zeros((16, 16)), block]])
    a = kr - adjoining_superop().matrix
    _, s, vh = np.linalg.svd(a)
    basis = vh[int(np.sum(s > 1e-10)):]
    x = rng.standard_normal(basis.shape[0]) @ basis
    return unsplit(x)


# --- factorization -------------------------------------------------------------

def _nearest_kron(m: np.ndarray, da: int, db: int):
    """(A, B, second singular value) with m ~ A (x) B, A: da x da, B: db x db."""
    r = m.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)
    u, s, vh = np.linalg.svd(r)
    a = np.sqrt(s[0]) * u[:, 0].reshape(da, da)
    b = np.sqrt(s[0]) * vh[0].reshape(db, db)
    return a, b, (s[1] if s.size > 1 else 0.0)


def kron_rank_gap(block: np.ndarray) -> float:
    """Second singular value of the K2^T (x) K1 rearrangement."""
    return float(_nearest_kron(np.asarray(block, dtype=complex), 4, 4)[2])


def factor_local_pair(block: np.ndarray):
    """Local (K1, K2) with K2^T (x) K1 = block, checked to 1e-9."""
    a, b, _ = _nearest_kron(np.asarray(block, dtype=complex), 4, 4)
    k2t, k1 = a, b
    factors = []
    for op in (k1, k2t.T):
        x, y, _ = _nearest_kron(op, 2, 2)
        factors.append([reproject_su2(x), reproject_su2(y)])
    k1l = LocalUnitary(factors[0], check=False)
    k2l = LocalUnitary(factors[1], check=False)
    cand = pair_superop(k1l, k2l)
    for sign in (1, -1):
        if np.linalg.norm(sign * cand - block) < 1e-9:
            if sign < 0:
                k1l = LocalUnitary([-factors[0][0], factors[0][1]], check=False)
            return k1l, k2l
    raise ValueError("pattern is not a local pair up to sign")


def subtype_counts(n: int) -> tuple[int, int]:
    if n < 2:
        raise ValueError("subtype counting starts at two qubits")
    return 2 ** n, 2 ** n


_REALIZATIONS = _build_realizations()
