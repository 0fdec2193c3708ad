"""
Exact arithmetic over the Gaussian rationals Q(i) and exact dense linear algebra, on top of sympy's `QQ_I` domain.
"""

from .matrix import (
    MatrixQ,
    VectorQ,
    from_domain_matrix,
    inverse,
    kernel_basis,
    rank,
    row_echelon,
    solve,
    to_domain_matrix,
)
from .scalar import ONE, ZERO, GaussianRational, I

__all__ = (
    'GaussianRational',
    'ZERO',
    'ONE',
    'I',
    'VectorQ',
    'MatrixQ',
    'to_domain_matrix',
    'from_domain_matrix',
    'row_echelon',
    'rank',
    'kernel_basis',
    'solve',
    'inverse',
)
