"""Ground states of the single- and two-qubit asymmetric quantum Rabi models.

Exact diagonalization in a truncated Fock basis is compared against a
displaced-frame analytic ansatz through energies, fidelities, qubit entropy
and two-qubit negativity.
"""
from .errors import (
    AsymRabiError, BasisMismatch, ConfigInvalid, DegenerateB, DegenerateGround,
    DimensionMismatch, NoConvergence, NotDensityMatrix, RootAmbiguous,
    RootNotFound, TruncationInsufficient, UnknownPreset,
)
from .fock import FockSpace, annihilation_matrix, coherent_overlap, coherent_vector
from .hamiltonian import (
    HermitianOperator, SingleQubitParams, TwoQubitParams, build_single_qubit,
    build_two_qubit, build_two_qubit_rotated,
)
from .exact import GroundStateSolution, converged_ground_state, ground_state
from .transform import (
    ThreeLevelEigensystem, TransformedAnsatz, ansatz_single, ansatz_two_qubit,
    energy_g1, energy_g1_quadratic, energy_g2, energy_g2_quadratic, fidelity,
    solve_xi1, solve_xi2, three_level_eigensystem, xi1_linear_approx,
    xi2_linear_approx,
)
from .entanglement import (
    DensityMatrix, EntanglementReport, negativity, negativity_closed_form,
    negativity_perturbative, reduced_density, transformed_partial_transpose,
    triplet_to_two_qubit, von_neumann_entropy,
)
from .sweep import SurfaceRecord, SweepConfig, figure_preset, run_sweep

__version__ = "0.1.0"
