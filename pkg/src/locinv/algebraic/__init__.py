"""Closed-form invertibility criteria."""
from .cartan import INVOLUTIONS, CartanLabel, cartan_classify, cartan_row, involution
from .graphs import GraphVerdict, bipartite_invertibility, class_pulses, two_coloring
from .criteria import (
    RotationParams,
    adk_eigenspace_expand,
    double_commutator_check,
    double_commutator_witness,
    invariant_subspace_check,
    local_basis,
    single_pauli_candidates,
    verify_inversion,
)
from .multigraph import TermGroup, group_residuals, multigraph_decompose, support_groups
from .orders import (
    ZRotationSolution,
    expand_pm,
    fz_diagonal,
    individual_z_inversion,
    individual_z_unitary,
    joint_z_inversion,
    joint_z_unitary,
    order_matrix,
    pauli_order_row,
    weyl_order,
)
from .spectrum import spectrum_pairing_check, xyz_eigenvalues
