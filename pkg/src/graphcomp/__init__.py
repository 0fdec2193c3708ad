"""
Complements of graphs of meromorphic functions `m = f + 1/g` in `C^n × C`, restricted to polynomial data: the
covering space and its sprays, numerically verified, and the decidable parts of the decomposition criterion.
"""

from .cover import (
    CoveredPoint,
    GraphPoint,
    HypersurfacePoint,
    LimitCheck,
    concrete_embedding,
    embedding_residual,
    equivalent,
    fibre_representatives,
    fibre_spray,
    localise_limit_check,
    phi,
    pi_cover,
    shear,
    shift_layer,
    tilde_sigma,
    tilde_sigma0,
    transition,
    unshear,
)
from .decompose import (
    Decomposition,
    MeromorphicFamily,
    Outcome,
    decompose,
    graph_membership,
    m_nu,
    m_nu_loop,
    m_nu_outcome,
    poly_decompose_univariate,
    winding_number,
)
from .poly import PolyDocument, PolyMap, UniPolyQ, complex_pair, gcd, parse_poly
from .verify import (
    SUITES,
    VerificationRecord,
    covering_suite,
    fibre_spray_suite,
    localisation_suite,
    random_cubic,
    run_suites,
)

__all__ = (
    'SUITES',
    'CoveredPoint',
    'Decomposition',
    'GraphPoint',
    'HypersurfacePoint',
    'LimitCheck',
    'MeromorphicFamily',
    'Outcome',
    'PolyDocument',
    'PolyMap',
    'UniPolyQ',
    'VerificationRecord',
    'complex_pair',
    'concrete_embedding',
    'covering_suite',
    'decompose',
    'embedding_residual',
    'equivalent',
    'fibre_representatives',
    'fibre_spray',
    'fibre_spray_suite',
    'gcd',
    'graph_membership',
    'localisation_suite',
    'localise_limit_check',
    'm_nu',
    'm_nu_loop',
    'm_nu_outcome',
    'parse_poly',
    'phi',
    'pi_cover',
    'poly_decompose_univariate',
    'random_cubic',
    'run_suites',
    'shear',
    'shift_layer',
    'tilde_sigma',
    'tilde_sigma0',
    'transition',
    'unshear',
    'winding_number',
)
