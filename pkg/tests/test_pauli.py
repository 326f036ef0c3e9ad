import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locinv.errors import IndexOutOfRange, ParseError
from locinv.linalg import kron, vec
from locinv.pauli import (
    PAULI, CouplingGraph, Edge, HamiltonianSpec, PauliString, WeylIndex, build_matrix,
    collective, collective_fz, fz_diagonal_exact, graph_to_hamiltonian, parse_graph,
    parse_hamiltonian, pauli_decompose, render, weyl_matrix,
)

from conftest import random_hermitian


def terms(spec):
    return {t.letters: t.coefficient for t in spec.terms}


def test_parse_simple_sum():
    assert terms(parse_hamiltonian("zz+z1+1x", 2)) == {"zz": 1.0, "z1": 1.0, "1x": 1.0}


def test_parse_coefficients_and_spaces():
    assert terms(parse_hamiltonian("xxx + 2 yyy + 3 zzz", 3)) == {"xxx": 1, "yyy": 2, "zzz": 3}


def test_parse_leading_ones_are_letters_when_needed():
    assert terms(parse_hamiltonian("1xx-1yy", 3)) == {"1xx": 1.0, "1yy": -1.0}
    assert terms(parse_hamiltonian("0.5*1z", 2)) == {"1z": 0.5}
    assert terms(parse_hamiltonian("21z", 2)) == {"1z": 2.0}


def test_parse_unicode_minus_and_merging():
    assert terms(parse_hamiltonian("xx−yy+xx", 2)) == {"xx": 2.0, "yy": -1.0}
    assert terms(parse_hamiltonian("zz-zz+x1", 2)) == {"x1": 1.0}


@pytest.mark.parametrize("text,n,pos", [("zq", 2, 1), ("zz+", 2, 3), ("zzz", 2, 0), ("zz zz", 2, 0), ("zz+zx+q1", 2, 6)])
def test_parse_errors_report_position(text, n, pos):
    with pytest.raises(ParseError) as exc:
        parse_hamiltonian(text, n)
    assert exc.value.position == pos


def test_build_matrix_examples():
    assert np.array_equal(build_matrix(parse_hamiltonian("zz", 2)), np.diag([1, -1, -1, 1]))
    m = build_matrix(parse_hamiltonian("xx-yy", 2))
    expect = np.zeros((4, 4))
    expect[0, 3] = expect[3, 0] = 2
    assert np.allclose(m, expect)
    w = np.linalg.eigvalsh(build_matrix(parse_hamiltonian("xx+yy+zz", 2)))
    assert np.allclose(sorted(w), [-3, 1, 1, 1])


def test_half_spin_convention():
    full = build_matrix(parse_hamiltonian("zz+x1", 2))
    half = build_matrix(parse_hamiltonian("zz+x1", 2, half_spin=True))
    assert np.allclose(half, kron(PAULI["z"], PAULI["z"]) / 4 + kron(PAULI["x"], np.eye(2)) / 2)
    assert not np.allclose(full, half)


def test_pauli_string_properties():
    p = PauliString("x1z", 2.0)
    assert p.weight == 2 and p.support == (0, 2) and p.n == 3
    with pytest.raises(ValueError):
        PauliString("xa")


def test_collective_fz_matches_kronecker_sum():
    assert np.allclose(collective_fz(1), np.diag([0.5, -0.5]))
    assert np.allclose(collective_fz(2), np.diag([1, 0, 0, -1]))
    assert collective_fz(3)[3, 3] == -0.5
    for n in range(1, 6):
        assert np.allclose(collective_fz(n), collective("z", n))


def test_fz_diagonal_exact():
    assert fz_diagonal_exact(1, 1) == Fraction(1, 2)
    assert fz_diagonal_exact(1, 2) == Fraction(-1, 2)
    assert fz_diagonal_exact(7, 1) == Fraction(7, 2)
    assert fz_diagonal_exact(6, 47) == -1
    assert fz_diagonal_exact(6, 11) == 1
    with pytest.raises(IndexOutOfRange):
        fz_diagonal_exact(2, 5)


def test_weyl_matrix():
    assert np.array_equal(weyl_matrix(WeylIndex(1, 2, 1)), [[0, 1], [0, 0]])
    e = weyl_matrix(WeylIndex(8, 15, 4))
    assert e.shape == (16, 16) and e[7, 14] == 1 and np.count_nonzero(e) == 1
    for i, j in [(1, 1), (3, 2), (4, 1)]:
        v = vec(weyl_matrix(WeylIndex(i, j, 2)))
        assert np.flatnonzero(v).tolist() == [(j - 1) * 4 + i - 1]
    with pytest.raises(IndexOutOfRange):
        WeylIndex(0, 1, 2)


def test_ring_and_graph_hamiltonians():
    c4 = graph_to_hamiltonian(CouplingGraph.ring(4))
    assert sorted(terms(c4)) == sorted(["zz11", "1zz1", "11zz", "z11z"])
    g = CouplingGraph(2, (Edge(1, 2, "xmx", 1.0),))
    assert terms(graph_to_hamiltonian(g)) == {"xx": 1.0, "yy": -1.0}
    c3 = terms(graph_to_hamiltonian(CouplingGraph.ring(3, "xy", kappa=1.0)))
    assert sum(k.count("x") == 2 for k in c3) == 3 and sum(k.count("y") == 2 for k in c3) == 3


def test_graph_validation():
    with pytest.raises(ValueError):
        CouplingGraph(3, (Edge(1, 2, "zz", 1.0), Edge(1, 2, "zz", 2.0)))
    with pytest.raises(ValueError):
        CouplingGraph(2, (Edge(2, 3, "zz", 1.0),))
    with pytest.warns(UserWarning):
        CouplingGraph(4, (Edge(1, 2, "zz", 1.0), Edge(3, 4, "zz", 1.0)))


def test_parse_graph_format():
    g = parse_graph("# ring\n1 2 zz 1\n2 3 xy:0.5 2 # tail\n\n3 1 xmx 1\n")
    assert g.n == 3
    assert [(e.k, e.l, e.kind) for e in g.edges] == [(1, 2, "zz"), (2, 3, "xy"), (1, 3, "xmx")]
    assert g.edges[1].kappa == 0.5
    with pytest.raises(ParseError) as exc:
        parse_graph("1 2 zz 1\n1 2 qq 1\n")
    assert exc.value.position == 2


def test_effective_kind():
    assert Edge(1, 2, "xy", 1.0, -1.0).effective_kind == "xmx"
    assert Edge(1, 2, "xy", 1.0, 1.0).effective_kind == "xx"
    assert Edge(1, 2, "xy", 1.0, 0.5).effective_kind == "xy"


def test_pauli_decompose_round_trip(rng):
    h = random_hermitian(8, rng)
    assert np.allclose(build_matrix(pauli_decompose(h)), h, atol=1e-12)
    spec = pauli_decompose(build_matrix(parse_hamiltonian("zz1+0.5x1y", 3)))
    assert terms(spec) == pytest.approx({"zz1": 1.0, "x1y": 0.5})


_term = st.tuples(st.text("1xyz", min_size=3, max_size=3),
                  st.floats(-100, 100, allow_nan=False).filter(lambda c: abs(c) > 1e-6))


@settings(max_examples=100, deadline=None)
@given(st.lists(_term, min_size=1, max_size=6))
def test_render_parse_round_trip(pairs):
    spec = HamiltonianSpec.from_terms(3, pairs)
    if not spec.terms:
        return
    back = parse_hamiltonian(render(spec), 3)
    assert terms(back) == terms(spec)
