"""Two-state discrete-time quantum walks driven by Pauli-axis translations."""

from .analysis import (
    Distribution,
    diagonal_variances,
    distribution,
    find_symmetries,
    marginal,
    max_abs_diff,
    mean,
    variance,
)
from .engine import NormalizationError, SpinorField, WalkConfig, evolve, iter_evolve, step
from .grover import grover_evolve, grover_evolve_state
from .hamiltonian import (
    DegenerateMomentumError,
    eigensystem,
    hamiltonian_matrix,
    triangular_commutator_report,
    walk_momentum_matrix,
)
from .lattice import KagomeSite, LatticeKind, LatticeSpec, lattice_spec
from .spinor import PauliAxis, coin_operator, projector, spin_from_angles

__version__ = "0.1.0"

__all__ = [
    "Distribution",
    "DegenerateMomentumError",
    "KagomeSite",
    "LatticeKind",
    "LatticeSpec",
    "NormalizationError",
    "PauliAxis",
    "SpinorField",
    "WalkConfig",
    "coin_operator",
    "diagonal_variances",
    "distribution",
    "eigensystem",
    "evolve",
    "find_symmetries",
    "grover_evolve",
    "grover_evolve_state",
    "hamiltonian_matrix",
    "iter_evolve",
    "lattice_spec",
    "marginal",
    "max_abs_diff",
    "mean",
    "projector",
    "spin_from_angles",
    "step",
    "triangular_commutator_report",
    "variance",
    "walk_momentum_matrix",
]
