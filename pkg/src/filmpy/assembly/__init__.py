"""Mixed finite element operators: mass, (weighted) stiffness, convection."""

from filmpy.assembly.boundary import dirichlet_values, impose_dirichlet, replace_rows, zero_rows
from filmpy.assembly.models import FieldState, PhysicsModel, SparseOperator
from filmpy.assembly.norms import integrate, l2_error
from filmpy.assembly.operators import (
    assemble_convection,
    assemble_mass,
    assemble_stiffness,
    assemble_weighted_stiffness,
    lumped_mass,
)
from filmpy.assembly.quadrature import QuadratureRule, quadrature_element

__all__ = [
    "FieldState",
    "PhysicsModel",
    "QuadratureRule",
    "SparseOperator",
    "assemble_convection",
    "assemble_mass",
    "assemble_stiffness",
    "assemble_weighted_stiffness",
    "dirichlet_values",
    "impose_dirichlet",
    "integrate",
    "l2_error",
    "lumped_mass",
    "quadrature_element",
    "replace_rows",
    "zero_rows",
]
