"""Exact arithmetic substrate: integer matrices and Smith form, finitely
generated abelian groups, cyclotomic numbers, small finite fields."""

from .intmat import (
    IntMatrix,
    smith_normal_form,
    cokernel_group,
    CokernelPresentation,
    FinAbGroup,
    solve_integer,
    kernel_basis,
    abelian_subgroup_type,
)
from .cyclo import Cyclotomic, cyclotomic_reduce, cyclotomic_polynomial
from .ffield import FiniteField, finite_field_build

__all__ = [
    "IntMatrix",
    "smith_normal_form",
    "cokernel_group",
    "CokernelPresentation",
    "FinAbGroup",
    "solve_integer",
    "kernel_basis",
    "abelian_subgroup_type",
    "Cyclotomic",
    "cyclotomic_reduce",
    "cyclotomic_polynomial",
    "FiniteField",
    "finite_field_build",
]
