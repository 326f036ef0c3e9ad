"""Pauli-string Hamiltonians, collective operators and coupling graphs.

Text notation: a Hamiltonian is a signed sum of terms, each an optional
real coefficient followed by exactly ``n`` letters from ``1xyz``; letter
``k`` acts on qubit ``k`` (leftmost Kronecker factor).  Examples::

    zz+z1+1x
    xxx + 2 yyy + 3*zzz
"""
from __future__ import annotations

import re
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import IndexOutOfRange, ParseError

LETTERS = "1xyz"

PAULI = {
    "1": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_MINUS = "-−"
_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class PauliString:
    letters: str
    coefficient: float = 1.0

    def __post_init__(self):
        if not self.letters or any(c not in LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        """Number of non-identity letters (the interaction order)."""
        return sum(c != "1" for c in self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.letters) if c != "1")

    def matrix(self, half_spin: bool = False) -> np.ndarray:
        m = np.ones((1, 1), dtype=complex)
        for c in self.letters:
            m = np.kron(m, PAULI[c])
        scale = 0.5 ** self.weight if half_spin else 1.0
        return self.coefficient * scale * m


@dataclass(frozen=True)
class HamiltonianSpec:
    n: int
    terms: tuple[PauliString, ...]
    half_spin_convention: bool = False
    # set when the Hamiltonian was generated from a coupling graph
    graph: "CouplingGraph | None" = field(default=None, compare=False)

    @classmethod
    def from_terms(cls, n: int, pairs, half_spin: bool = False, graph=None):
        """Build a spec from ``(letters, coefficient)`` pairs, merging duplicates."""
        merged: dict[str, float] = {}
        for letters, c in pairs:
            if len(letters) != n:
                raise ValueError(f"term {letters!r} does not have {n} letters")
            merged[letters] = merged.get(letters, 0.0) + float(c)
        terms = tuple(PauliString(l, c) for l, c in merged.items() if c != 0.0)
        return cls(n, terms, half_spin, graph)

    def matrix(self) -> np.ndarray:
        return build_matrix(self)

    def __str__(self):
        return render(self)


def _parse_error(pos, reason):
    return ParseError(pos, reason)


def parse_hamiltonian(text: str, n: int, half_spin: bool = False) -> HamiltonianSpec:
    """Parse the textual Pauli-sum notation into a :class:`HamiltonianSpec`.

    Whitespace is ignored, '*' may separate coefficient and letters, and
    the Unicode minus sign is accepted.  Raises :class:`ParseError` with
    the 0-based offset of the offending character.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    chars = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    if not chars:
        raise _parse_error(0, "empty expression")
    pairs = []
    k = 0
    first = True
    while k < len(chars) or first:
        sign = 1.0
        if k < len(chars) and (chars[k][1] == "+" or chars[k][1] in _MINUS):
            sign = -1.0 if chars[k][1] in _MINUS else 1.0
            k += 1
        elif not first:
            raise _parse_error(chars[k][0], "expected '+' or '-'")
        first = False
        start = chars[k][0] if k < len(chars) else len(text)
        # coefficient: the longest numeric prefix that still leaves n letters
        body = "".join(c for _, c in chars[k:])
        coef, used = 1.0, 0
        m = _NUMBER.match(body)
        if m:
            # a leading run of '1's may be identity letters rather than a number
            cand = m.group(0)
            rest = body[len(cand):]
            letters_after = re.match(r"\*?([1xyz]*)", rest).group(1)
            while cand and len(letters_after) < n and cand[-1] == "1" and not m.group(2):
                cand = cand[:-1]
                letters_after = "1" + letters_after
            if cand in ("", "."):
                cand = ""
            if cand:
                coef, used = float(cand), len(cand)
        rest = body[used:]
        if used and rest.startswith("*"):
            used += 1
            rest = rest[1:]
        j = 0
        while j < len(rest) and rest[j] not in "+" + _MINUS:
            j += 1
        letters = rest[:j]
        for off, c in enumerate(letters):
            if c not in LETTERS:
                raise _parse_error(chars[k + used + off][0], f"unknown letter {c!r}")
        if not letters:
            raise _parse_error(start, "empty term")
        if len(letters) != n:
            raise _parse_error(start, f"term {letters!r} has {len(letters)} letters, expected {n}")
        pairs.append((letters, sign * coef))
        k += used + j
    return HamiltonianSpec.from_terms(n, pairs, half_spin)


def _fmt(c: float) -> str:
    return repr(float(c))


def render(spec: HamiltonianSpec) -> str:
    """Text form that parses back to the same coefficients exactly."""
    if not spec.terms:
        return "0*" + "1" * spec.n
    out = []
    for t in spec.terms:
        c = t.coefficient
        if not out:
            out.append(("-" if c < 0 else "") + f"{_fmt(abs(c))}*{t.letters}")
        else:
            out.append(("- " if c < 0 else "+ ") + f"{_fmt(abs(c))}*{t.letters}")
    return " ".join(out)


def build_matrix(spec: HamiltonianSpec) -> np.ndarray:
    dim = 2 ** spec.n
    h = np.zeros((dim, dim), dtype=complex)
    for t in spec.terms:
        h += t.matrix(spec.half_spin_convention)
    return h


def single_site(op, site: int, n: int) -> np.ndarray:
    """``op`` on qubit ``site`` (0-based) with identities elsewhere."""
    left = np.eye(2 ** site)
    right = np.eye(2 ** (n - site - 1))
    return np.kron(np.kron(left, op), right)


def collective(nu: str, n: int) -> np.ndarray:
    """F_nu = sum over qubits of sigma_nu / 2."""
    return sum(single_site(PAULI[nu] / 2, k, n) for k in range(n))


def collective_fz(n: int) -> np.ndarray:
    if not 1 <= n <= 12:
        raise ValueError("collective_fz supports 1 <= n <= 12")
    idx = np.arange(2 ** n)
    ones = np.array([bin(i).count("1") for i in idx])
    return np.diag((n - 2 * ones) / 2).astype(complex)


def fz_diagonal_exact(n: int, i: int) -> Fraction:
    """(F_z)_ii as an exact rational; ``i`` is 1-based."""
    if not 1 <= i <= 2 ** n:
        raise IndexOutOfRange(f"index {i} outside [1, {2 ** n}]")
    b = bin(i - 1).count("1")
    return Fraction(n - 2 * b, 2)


@dataclass(frozen=True)
class WeylIndex:
    i: int
    j: int
    n: int

    def __post_init__(self):
        dim = 2 ** self.n
        if not (1 <= self.i <= dim and 1 <= self.j <= dim):
            raise IndexOutOfRange(f"({self.i}, {self.j}) outside [1, {dim}]")


def weyl_matrix(idx: WeylIndex) -> np.ndarray:
    dim = 2 ** idx.n
    e = np.zeros((dim, dim), dtype=complex)
    e[idx.i - 1, idx.j - 1] = 1.0
    return e


# --- coupling graphs -----------------------------------------------------

KINDS = ("zz", "xx", "xy", "xmx")


@dataclass(frozen=True)
class Edge:
    k: int          # 1-based, k < l
    l: int
    kind: str       # one of KINDS
    J: float
    kappa: float = 1.0   # only used for kind "xy"

    def pauli_terms(self, n: int):
        def word(a, b):
            w = ["1"] * n
            w[self.k - 1], w[self.l - 1] = a, b
            return "".join(w)
        if self.kind == "zz":
            return [(word("z", "z"), self.J)]
        if self.kind == "xx":
            return [(word("x", "x"), self.J), (word("y", "y"), self.J)]
        if self.kind == "xy":
            return [(word("x", "x"), self.J), (word("y", "y"), self.kappa * self.J)]
        return [(word("x", "x"), self.J), (word("y", "y"), -self.J)]

    @property
    def effective_kind(self) -> str:
        """XY with kappa = -1 is the double-quantum X(-X) coupling."""
        if self.kind == "xy" and self.kappa == -1.0:
            return "xmx"
        if self.kind == "xy" and self.kappa == 1.0:
            return "xx"
        return self.kind


@dataclass(frozen=True)
class CouplingGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if not (1 <= e.k < e.l <= self.n):
                raise ValueError(f"edge ({e.k}, {e.l}) must satisfy 1 <= k < l <= n")
            if e.kind not in KINDS:
                raise ValueError(f"unknown interaction kind {e.kind!r}")
            if e.J == 0:
                raise ValueError("edge weight must be nonzero")
            if (e.k, e.l) in seen:
                raise ValueError(f"duplicate edge ({e.k}, {e.l})")
            seen.add((e.k, e.l))
        if not self.is_connected():
            warnings.warn("coupling graph is not connected", stacklevel=2)

    @classmethod
    def ring(cls, n: int, kind: str = "zz", J: float = 1.0, kappa: float = 1.0):
        pairs = [(k, k % n + 1) for k in range(1, n + 1)] if n > 2 else [(1, 2)]
        edges = tuple(Edge(min(a, b), max(a, b), kind, J, kappa) for a, b in pairs)
        return cls(n, edges)

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(1, self.n + 1)}
        for e in self.edges:
            adj[e.k].append(e.l)
            adj[e.l].append(e.k)
        return adj

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = self.adjacency()
        seen, todo = {1}, deque([1])
        while todo:
            v = todo.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n


def parse_graph(text: str, n: int | None = None) -> CouplingGraph:
    """Parse the edge-list format ``k l {zz|xx|xy:<kappa>|xmx} J``.

    Blank lines and text after '#' are ignored.  ``n`` defaults to the
    largest vertex index.  ParseError positions are 1-based line numbers.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(lineno, "expected 'k l kind J'")
        try:
            k, l = int(parts[0]), int(parts[1])
            J = float(parts[3])
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        kind, kappa = parts[2].lower(), 1.0
        if kind.startswith("xy:"):
            try:
                kappa = float(kind[3:])
            except ValueError:
                raise ParseError(lineno, f"bad kappa in {parts[2]!r}") from None
            kind = "xy"
        if kind not in KINDS:
            raise ParseError(lineno, f"unknown kind {parts[2]!r}")
        if k == l:
            raise ParseError(lineno, "self-loop")
        if k > l:
            k, l = l, k
        edges.append(Edge(k, l, kind, J, kappa))
    if not edges:
        raise ParseError(0, "no edges")
    nmax = max(e.l for e in edges)
    return CouplingGraph(n or nmax, tuple(edges))


def read_graph(path, n: int | None = None) -> CouplingGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), n)


def graph_to_hamiltonian(g: CouplingGraph) -> HamiltonianSpec:
    """Pair Hamiltonian of a coupling graph with the 1/2-per-operator convention."""
    pairs = [p for e in g.edges for p in e.pauli_terms(g.n)]
    return HamiltonianSpec.from_terms(g.n, pairs, half_spin=True, graph=g)


def _basis_change():
    # m[a, 2*i + j] = sigma_a[j, i], so sum_ij m[a, ij] h_ij = tr(sigma_a h)
    m = np.zeros((4, 4), dtype=complex)
    for a, c in enumerate(LETTERS):
        m[a] = PAULI[c].T.reshape(-1)
    return m


_M4 = _basis_change()


def pauli_coefficients(h) -> np.ndarray:
    """Array c of shape (4,)*n with h = sum_a c[a] sigma_a1 (x) ... (x) sigma_an.

    Axis order per qubit follows ``LETTERS`` (1, x, y, z).
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0].bit_length() - 1
    t = h.reshape([2] * (2 * n))
    perm = [ax for k in range(n) for ax in (k, n + k)]
    t = t.transpose(perm).reshape([4] * n)
    for k in range(n):
        t = np.moveaxis(np.tensordot(_M4, t, axes=([1], [k])), 0, k)
    return t / 2 ** n


def pauli_decompose(h, tol: float = 1e-12, half_spin: bool = False) -> HamiltonianSpec:
    """Pauli-sum spec of a Hermitian matrix (coefficients below ``tol``·‖h‖ dropped)."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0].bit_length() - 1
    c = pauli_coefficients(h)
    scale = max(np.linalg.norm(h), 1e-300)
    pairs = []
    for idx in zip(*np.nonzero(np.abs(c) > tol * scale)):
        letters = "".join(LETTERS[a] for a in idx)
        coef = float(np.real(c[idx]))
        if half_spin:
            coef *= 2 ** sum(a != 0 for a in idx)
        pairs.append((letters, coef))
    return HamiltonianSpec.from_terms(n, pairs, half_spin)
