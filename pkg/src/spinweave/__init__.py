"""Exact-arithmetic Clifford algebras, spinor groups, and obstruction checks."""

from .clifford import CliffordElement, Signature, VolumeElement, blade_mul, iso_im, volume
from .groups import (
    FrameGroup,
    KappaImage,
    OrthMatrix,
    adjoint_matrix,
    build_odd_element,
    frame_group,
    generate_frame_group,
    is_lipschitz,
    kappa,
    twisted_adjoint,
)
from .linalg import ExactMatrix
from .reps import (
    CARTAN,
    DIRAC,
    PAULI,
    PAULI_TWISTED,
    WEYL_MINUS,
    WEYL_PLUS,
    Intertwiner,
    Representation,
    SpinSpace,
    anticommutant,
    build_rep,
    cartan_projectors,
    choose_gamma,
    commutant,
    decompose_even_restriction,
    find_intertwiner,
    gamma_map,
    grading_of,
    spin_space,
    verify_clifford,
)
from .scalars import ExactScalar, sc

__version__ = "0.1.0"

__all__ = [
    "CliffordElement",
    "Signature",
    "VolumeElement",
    "blade_mul",
    "iso_im",
    "volume",
    "FrameGroup",
    "KappaImage",
    "OrthMatrix",
    "adjoint_matrix",
    "build_odd_element",
    "frame_group",
    "generate_frame_group",
    "is_lipschitz",
    "kappa",
    "twisted_adjoint",
    "ExactMatrix",
    "CARTAN",
    "DIRAC",
    "PAULI",
    "PAULI_TWISTED",
    "WEYL_MINUS",
    "WEYL_PLUS",
    "Intertwiner",
    "Representation",
    "SpinSpace",
    "anticommutant",
    "build_rep",
    "cartan_projectors",
    "choose_gamma",
    "commutant",
    "decompose_even_restriction",
    "find_intertwiner",
    "gamma_map",
    "grading_of",
    "spin_space",
    "verify_clifford",
    "ExactScalar",
    "sc",
]
