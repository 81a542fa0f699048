"""Desk-scale calculator for candidate Steinitz-class subgroups."""

from .groups import (
    FiniteGroup,
    GroupConstructionError,
    GroupHom,
    Subgroup,
    build_group,
    cyclic_group,
    direct_product,
    find_complement,
    heisenberg_group,
    modular_group,
    normal_abelian_subgroups,
    quotient_group,
    semidirect_product,
    two_generator_l2_group,
)

__version__ = "0.1.0"
