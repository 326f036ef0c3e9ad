"""Local unitaries K = K_1 (x) ... (x) K_n with K_l in SU(2)."""
from __future__ import annotations

import numpy as np

from .config import TOL
from .pauli import PAULI

_SIG = (PAULI["x"], PAULI["y"], PAULI["z"])


def su2_from_axis_angle(axis, angle: float) -> np.ndarray:
    """exp(-i angle/2 n.sigma)."""
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    ns = a[0] * _SIG[0] + a[1] * _SIG[1] + a[2] * _SIG[2]
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * ns


def su2_from_quaternion(q) -> np.ndarray:
    a, b, c, d = q
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    """Inverse of :func:`su2_from_axis_angle`, angle in [0, 2pi]."""
    c = np.clip(np.real(np.trace(u)) / 2, -1.0, 1.0)
    angle = 2 * np.arccos(c)
    v = np.array([np.real(1j * np.trace(s @ u)) / 2 for s in _SIG])
    nv = np.linalg.norm(v)
    if nv < 1e-15:
        return np.array([0.0, 0.0, 1.0]), float(angle)
    return v / nv, float(angle)


def reproject_su2(u: np.ndarray) -> np.ndarray:
    """Nearest unitary (polar factor), then phase-fixed to determinant 1."""
    w, _, vh = np.linalg.svd(u)
    p = w @ vh
    return p / np.sqrt(np.linalg.det(p))


class LocalUnitary:
    """Ordered list of 2x2 special-unitary factors; qubit 1 first.

    The full ``2^n x 2^n`` matrix is built lazily and cached.
    """

    def __init__(self, factors, check: bool = True):
        fs = [np.array(f, dtype=complex) for f in factors]
        if check:
            for f in fs:
                if f.shape != (2, 2):
                    raise ValueError("factors must be 2x2")
                if np.linalg.norm(f @ f.conj().T - np.eye(2)) >= TOL.unitary:
                    raise ValueError("factor is not unitary")
                if abs(np.linalg.det(f) - 1) >= TOL.unitary:
                    raise ValueError("factor is not special unitary")
        self._factors = tuple(fs)
        self._full = None

    @classmethod
    def identity(cls, n: int) -> "LocalUnitary":
        return cls([np.eye(2)] * n, check=False)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "LocalUnitary":
        qs = rng.standard_normal((n, 4))
        qs /= np.linalg.norm(qs, axis=1, keepdims=True)
        return cls([su2_from_quaternion(q) for q in qs], check=False)

    @classmethod
    def from_axis_angles(cls, axes, angles) -> "LocalUnitary":
        return cls([su2_from_axis_angle(a, t) for a, t in zip(axes, angles)], check=False)

    @classmethod
    def pulse(cls, n: int, qubit: int, axis, angle: float) -> "LocalUnitary":
        """Single rotation on ``qubit`` (0-based), identities elsewhere."""
        fs = [np.eye(2, dtype=complex)] * n
        fs = list(fs)
        fs[qubit] = su2_from_axis_angle(axis, angle)
        return cls(fs, check=False)

    @property
    def n(self) -> int:
        return len(self._factors)

    @property
    def factors(self) -> tuple[np.ndarray, ...]:
        return self._factors

    def full(self) -> np.ndarray:
        if self._full is None:
            m = np.ones((1, 1), dtype=complex)
            for f in self._factors:
                m = np.kron(m, f)
            self._full = m
        return self._full

    def dagger(self) -> "LocalUnitary":
        return LocalUnitary([f.conj().T for f in self._factors], check=False)

    def __matmul__(self, other: "LocalUnitary") -> "LocalUnitary":
        return LocalUnitary([a @ b for a, b in zip(self._factors, other._factors)], check=False)

    def step(self, gens) -> "LocalUnitary":
        """Left-multiply factor l by exp(g_l) for 2x2 skew-Hermitian g_l."""
        out = []
        for f, g in zip(self._factors, gens):
            out.append(reproject_su2(expm_skew2(g) @ f))
        return LocalUnitary(out, check=False)

    def axis_angles(self):
        return [axis_angle(f) for f in self._factors]

    def to_json(self):
        out = []
        for q, (ax, ang) in enumerate(self.axis_angles(), start=1):
            out.append({"qubit": q, "axis": [float(x) for x in ax], "angle": float(ang)})
        return out

    @classmethod
    def from_json(cls, items) -> "LocalUnitary":
        items = sorted(items, key=lambda d: d["qubit"])
        return cls.from_axis_angles([d["axis"] for d in items], [d["angle"] for d in items])


def expm_skew2(g: np.ndarray) -> np.ndarray:
    """Closed-form exponential of a 2x2 traceless skew-Hermitian matrix.

    Writes g = -i (t/2) n.sigma and returns cos(t/2) I - i sin(t/2) n.sigma;
    any trace part contributes a scalar phase.
    """
    tr = np.trace(g) / 2
    g0 = g - tr * np.eye(2)
    v = np.array([np.real(1j * np.trace(s @ g0)) / 2 for s in _SIG])  # g0 = -i v.sigma
    r = np.linalg.norm(v)
    if r < 1e-300:
        u = np.eye(2, dtype=complex)
    else:
        ns = (v[0] * _SIG[0] + v[1] * _SIG[1] + v[2] * _SIG[2]) / r
        u = np.cos(r) * np.eye(2) - 1j * np.sin(r) * ns
    return np.exp(tr) * u
