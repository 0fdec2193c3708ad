"""
Minimal linear relations (circuits) of an arrangement, their diagonal hyperplanes and associated subspaces, and the
obstructions these put on entire curves.
"""

from .circuits import attach_circuits, circuits, relation_sum
from .subspaces import (
    AssociatedSubspace,
    DiagonalHyperplane,
    ObstructionEntry,
    ObstructionReport,
    TangentSubspace,
    associated_subspace_through,
    base_locus,
    diagonal_hyperplanes,
    entire_curve_obstructions,
    tangent_direction_subspaces,
    verify_curve_in_subspace,
)

__all__ = (
    'AssociatedSubspace',
    'DiagonalHyperplane',
    'ObstructionEntry',
    'ObstructionReport',
    'TangentSubspace',
    'associated_subspace_through',
    'attach_circuits',
    'base_locus',
    'circuits',
    'diagonal_hyperplanes',
    'entire_curve_obstructions',
    'relation_sum',
    'tangent_direction_subspaces',
    'verify_curve_in_subspace',
)
