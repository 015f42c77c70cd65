"""Differential geometry of curves in the quaternions, sampled on grids."""

from .curve import (
    CurveDerivatives,
    CurveSamples,
    arc_length,
    arc_length_reparametrization,
    builtin_constant_curvature,
    builtin_symplectic,
    cumulative_arc_length,
    derivatives,
    is_regular,
    reparametrize_by_arc_length,
    sample_function,
    speed,
    straight_line,
    tangent,
)
from .errors import DegenerateGeometryError, InvalidInputError, IrregularCurveError, QuaternionDomainError
from .evolve import (
    EvoluteResult,
    evolute,
    evolute_curvature_relation,
    evolute_of_evolvent_roundtrip,
    evolute_tangent_check,
    evolvent,
    evolvent_curvature,
    evolvent_curvature_check,
    evolvent_tangent_check,
    symplectic_evolute,
    symplectic_evolute_curvature_relation,
)
from .frenet import (
    CurvatureProfile,
    SymplecticCurvatureProfile,
    curvature_cartesian,
    curvature_symplectic,
    frenet_matrix,
    frenet_matrix_apply,
    normal_frame,
    symplectic_matrix,
    symplectic_matrix_apply,
)
from .quat import (
    I,
    J,
    K,
    ONE,
    PolarForm,
    Quaternion,
    SymplecticForm,
    SymplecticPolarForm,
    conj,
    from_polar,
    from_symplectic,
    from_symplectic_polar,
    inverse,
    is_orthogonal,
    is_parallel,
    mul,
    norm,
    polar_unit_power,
    scalar_product,
    symplectic_unit_power,
    to_polar,
    to_symplectic,
    to_symplectic_polar,
)
from .reconstruct import (
    ReconstructionSpec,
    align_initial_conditions,
    reconstruct_closed_form,
    reconstruct_ode,
    reconstruct_symplectic,
    reconstruction_roundtrip,
    uniqueness_check,
)
from .report import CheckReport

__all__ = [
    "align_initial_conditions",
    "arc_length",
    "arc_length_reparametrization",
    "builtin_constant_curvature",
    "builtin_symplectic",
    "CheckReport",
    "conj",
    "cumulative_arc_length",
    "curvature_cartesian",
    "curvature_symplectic",
    "CurvatureProfile",
    "CurveDerivatives",
    "CurveSamples",
    "DegenerateGeometryError",
    "derivatives",
    "evolute",
    "evolute_curvature_relation",
    "evolute_of_evolvent_roundtrip",
    "evolute_tangent_check",
    "EvoluteResult",
    "evolvent",
    "evolvent_curvature",
    "evolvent_curvature_check",
    "evolvent_tangent_check",
    "frenet_matrix",
    "frenet_matrix_apply",
    "from_polar",
    "from_symplectic",
    "from_symplectic_polar",
    "I",
    "InvalidInputError",
    "inverse",
    "IrregularCurveError",
    "is_orthogonal",
    "is_parallel",
    "is_regular",
    "J",
    "K",
    "mul",
    "norm",
    "normal_frame",
    "ONE",
    "polar_unit_power",
    "PolarForm",
    "Quaternion",
    "QuaternionDomainError",
    "reconstruct_closed_form",
    "reconstruct_ode",
    "reconstruct_symplectic",
    "reconstruction_roundtrip",
    "ReconstructionSpec",
    "reparametrize_by_arc_length",
    "sample_function",
    "scalar_product",
    "speed",
    "straight_line",
    "symplectic_evolute",
    "symplectic_evolute_curvature_relation",
    "symplectic_matrix",
    "symplectic_matrix_apply",
    "symplectic_unit_power",
    "SymplecticCurvatureProfile",
    "SymplecticForm",
    "SymplecticPolarForm",
    "tangent",
    "to_polar",
    "to_symplectic",
    "to_symplectic_polar",
    "uniqueness_check",
]

__version__ = "0.1.0"
