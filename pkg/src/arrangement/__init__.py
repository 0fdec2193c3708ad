"""
Projective hyperplane arrangements: general position and the Oka classification of their complements.
"""

from .classify import (
    ArrangementDocument,
    classify,
    complement_membership,
    is_general_position,
    oka_witness,
    parse_arrangement,
    product_profile,
)
from .models import (
    Arrangement,
    Circuit,
    ClassificationReport,
    GeneralPosition,
    LinearForm,
    ProductProfile,
    ProjectivePoint,
    Reason,
    Verdict,
)

__all__ = (
    'Arrangement',
    'ArrangementDocument',
    'Circuit',
    'ClassificationReport',
    'GeneralPosition',
    'LinearForm',
    'ProductProfile',
    'ProjectivePoint',
    'Reason',
    'Verdict',
    'classify',
    'complement_membership',
    'is_general_position',
    'oka_witness',
    'parse_arrangement',
    'product_profile',
)
