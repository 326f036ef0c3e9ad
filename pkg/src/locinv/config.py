"""Central tolerance record.

Every numerical threshold used by the checks lives here so that a single
object documents (and can override) the acceptance behaviour.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12        # max |M - M^dag| entry
    unitary: float = 1e-10          # ||U U^dag - I||_F
    skew_rel: float = 1e-10         # ||g + g^dag|| relative to ||g||
    pairing_rel: float = 1e-9       # spectrum pairing, relative to ||h||_F
    inversion_rel: float = 1e-9     # analytic witness acceptance
    flow_witness: float = 1e-8      # flow witness acceptance
    type2_witness: float = 1e-6     # ||K1 U K2 - U^dag||_F
    rank_rel: float = 1e-10         # singular-value cutoff
    membership: float = 1e-10       # Cartan eigenspace membership
    locality: float = 1e-10         # non-local component of a "local" k
    symmetry_zero: float = 1e-12    # forced-zero template entries
    symmetry_map: float = 1e-10     # adjoint-map residual


TOL = Tolerances()
