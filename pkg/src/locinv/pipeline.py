"""Decision pipeline combining the algebraic criteria and the flows.

Order of evidence: spectrum pairing (a failed pairing certifies that no
type-I inverter exists), closed-form witnesses, the type-I flow, and,
when a time tau is given, the self-inverse test and the type-II flow.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebraic import (
    bipartite_invertibility,
    double_commutator_witness,
    individual_z_inversion,
    joint_z_inversion,
    joint_z_unitary,
    support_groups,
    single_pauli_candidates,
    spectrum_pairing_check,
    verify_inversion,
)
from .config import TOL
from .errors import TooManyRows, ZeroHamiltonian
from .flows import FlowConfig, type1_flow, type2_flow, type2_residual
from .linalg import expm_skew
from .local import LocalUnitary
from .pauli import HamiltonianSpec, build_matrix, pauli_decompose

LABELS = {"type1": "type1", "self_inverse": "self_inverse", "type2": "type2"}


@dataclass
class Classification:
    status: str          # type1 | type2 | self_inverse | certified_not_type1 | no_witness_found
    method: str
    witness: object = None          # LocalUnitary, or (K1, K2) for type2/self_inverse
    residual: float | None = None
    best_overlap: float | None = None
    tau: float | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        """Coarse label: type1, self_inverse, type2 or none."""
        return LABELS.get(self.status, "none")


def _matrix(h):
    if isinstance(h, HamiltonianSpec):
        m = build_matrix(h)
        graph = h.graph
    else:
        m = np.asarray(h, dtype=complex)
        graph = None
    if not np.any(np.abs(m) > 0):
        raise ZeroHamiltonian("the zero Hamiltonian is not a valid input")
    return m, graph


def _algebraic_witness(m, graph, diag):
    spec = pauli_decompose(m)
    phi = joint_z_inversion(spec)
    if phi is not None:
        return joint_z_unitary(spec.n, phi), f"joint_z (phi = pi/{round(np.pi / phi)})"
    try:
        sol = individual_z_inversion(spec)
    except TooManyRows as exc:
        diag["individual_z"] = str(exc)
        sol = None
    if sol is not None:
        return sol.unitary(), "individual_z"
    if graph is not None:
        gv = bipartite_invertibility(graph)
        diag["bipartite"] = gv.method
        if gv.odd_cycle is not None:
            diag["odd_cycle"] = list(gv.odd_cycle)
        if gv.invertible:
            return gv.witness, f"bipartite ({gv.method})"
    for label, k in single_pauli_candidates(spec.n):
        K = double_commutator_witness(m, k)
        if K is not None:
            return K, f"double_commutator (k = sigma_{label}/2)"
    return None, None


def _unpaired_group(m):
    """Support of an exact-support group whose spectrum is unpaired, if any.

    A local K maps each group into its own span, so every group must be
    inverted on its own; an unpaired group spectrum rules that out.
    """
    groups = support_groups(pauli_decompose(m))
    if len(groups) < 2:
        return None
    for g in groups:
        ok, _ = spectrum_pairing_check(build_matrix(g.spec))
        if not ok:
            return g.support
    return None


def is_self_inverse(u: np.ndarray, tol: float = 1e-9) -> bool:
    """U^2 = I, so that U = U^dag and K1 = K2 = I solve the type-II condition."""
    return np.linalg.norm(u @ u - np.eye(u.shape[0])) < tol * np.sqrt(u.shape[0])


def decide(h, tau: float | None = None, cfg: FlowConfig = FlowConfig()) -> Classification:
    m, graph = _matrix(h)
    n = m.shape[0].bit_length() - 1
    diag = {"identity_component": float(np.trace(m).real / m.shape[0])}
    paired, spectrum = spectrum_pairing_check(m)
    diag["spectrum_paired"] = paired
    result = None
    bad = _unpaired_group(m) if paired else None
    if not paired:
        result = Classification("certified_not_type1", "spectrum_pairing", diagnostics=diag)
    elif bad is not None:
        diag["unpaired_group_support"] = list(bad)
        result = Classification("certified_not_type1", "group_spectrum_pairing", diagnostics=diag)
    else:
        K, method = _algebraic_witness(m, graph, diag)
        if K is not None:
            res = verify_inversion(m, K)
            assert res < TOL.inversion_rel, f"{method} returned an unverified witness"
            result = Classification("type1", method, K, res, -1.0, diagnostics=diag)
        else:
            fr = type1_flow(m, cfg)
            diag["flow_restarts"] = fr.restarts_used
            diag["flow_iterations"] = fr.iterations_used
            if fr.found:
                res = verify_inversion(m, fr.witness)
                result = Classification("type1", "type1_flow", fr.witness, res,
                                        fr.best_overlap, diagnostics=diag)
            else:
                result = Classification("no_witness_found", "type1_flow",
                                        best_overlap=fr.best_overlap, diagnostics=diag)
    if result.status == "type1":
        assert paired, "type-I verdict on an unpaired spectrum"
        result.tau = tau
        return result
    if tau is None:
        return result
    result.tau = tau
    u = expm_skew(-1j * tau * m)
    if is_self_inverse(u):
        eye = LocalUnitary.identity(n)
        return Classification("self_inverse", "u_squared_is_phase", (eye, eye),
                              type2_residual(u, eye, eye),
                              -1.0, tau, diag)
    fr = type2_flow(u, cfg)
    diag["type2_restarts"] = fr.restarts_used
    diag["type2_iterations"] = fr.iterations_used
    if fr.found:
        return Classification("type2", "type2_flow", fr.witness,
                              type2_residual(u, *fr.witness), fr.best_overlap, tau, diag)
    diag["tau_verdict"] = "not_invertible_at"
    diag["type2_best_overlap"] = fr.best_overlap
    return result
