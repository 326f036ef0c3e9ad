import numpy as np
import pytest

from locinv.algebraic import spectrum_pairing_check, verify_inversion
from locinv.corpus import EXAMPLES, example
from locinv.errors import ZeroHamiltonian
from locinv.flows import FlowConfig, type2_residual
from locinv.linalg import expm_skew
from locinv.pauli import build_matrix, parse_hamiltonian
from locinv.pipeline import decide, is_self_inverse

CFG = FlowConfig(restarts=6)

EXPECTED = {1: "type1", 2: "type1", 3: "type1", 4: "type1", 5: "certified_not_type1",
            6: "type1", 7: "certified_not_type1", 8: "certified_not_type1",
            9: "certified_not_type1", 10: "type1", 11: "certified_not_type1"}


@pytest.mark.parametrize("num", [k for k, _, _ in EXAMPLES])
def test_corpus_verdicts(num):
    c = decide(example(num), None, CFG)
    assert c.status == EXPECTED[num]
    if c.status == "type1":
        assert verify_inversion(example(num), c.witness) < 1e-8


def test_zz_type1_by_double_commutator():
    c = decide(parse_hamiltonian("zz", 2))
    assert c.status == "type1" and c.label == "type1"
    assert verify_inversion(parse_hamiltonian("zz", 2), c.witness) < 1e-12


def test_isotropic_certified_and_not_invertible_at_tau():
    c = decide(parse_hamiltonian("xx+yy+zz", 2), tau=0.3, cfg=FlowConfig(restarts=3))
    assert c.status == "certified_not_type1"
    assert c.diagnostics["tau_verdict"] == "not_invertible_at"
    assert c.label == "none"


@pytest.mark.parametrize("text", ["0.5z1+0.5*1z+0.5zz", "z1+1z+zz"])
def test_type2_at_quarter_pi(text):
    h = parse_hamiltonian(text, 2)
    c = decide(h, tau=np.pi / 4, cfg=CFG)
    assert c.status == "type2"
    u = expm_skew(-1j * np.pi / 4 * build_matrix(h))
    assert type2_residual(u, *c.witness) < 1e-6


def test_self_inverse_propagator():
    h = parse_hamiltonian("zz+0.5z1+0.5*1z", 2)
    c = decide(h, tau=np.pi, cfg=CFG)
    assert c.status == "self_inverse" and c.label == "self_inverse"
    assert is_self_inverse(expm_skew(-1j * np.pi * build_matrix(h)))
    assert not is_self_inverse(expm_skew(-1j * 0.3 * build_matrix(h)))
    # U^2 = -I is not self-inverse: U = -U^dag
    assert not is_self_inverse(-1j * np.eye(4))


def test_identity_component_blocks_type1():
    a = decide(parse_hamiltonian("zz+3*11", 2))
    assert a.status == "certified_not_type1" and a.diagnostics["identity_component"] == pytest.approx(3)


def test_invalid_inputs():
    with pytest.raises(ZeroHamiltonian):
        decide(np.zeros((4, 4)))
    assert decide(np.eye(4)).status == "certified_not_type1"


def test_dominance_small_fuzz(rng):
    for _ in range(20):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = a + a.conj().T
        c = decide(h, None, FlowConfig(restarts=2, max_iters=500))
        if c.status == "type1":
            assert verify_inversion(h, c.witness) < 1e-8
        if not spectrum_pairing_check(h)[0]:
            assert c.status == "certified_not_type1"
