"""
Decidable fragments of writing `m = h/k` as `f + 1/g`: polynomial witnesses in one variable, and the winding
obstruction along loops in `Z(k)`.
"""

from __future__ import annotations as _annotations

import math
from collections.abc import Sequence
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict

import logfire

from ..common.errors import (
    BothZeroError,
    CommonFactorError,
    CommonZeroError,
    PreconditionError,
    UnderResolvedLoopError,
    VerificationFailedError,
    ZeroSampleError,
)
from ..exactlin import GaussianRational
from .poly import PolyMap, UniPolyQ, gcd

__all__ = (
    'Outcome',
    'Decomposition',
    'MeromorphicFamily',
    'poly_decompose_univariate',
    'decompose',
    'winding_number',
    'graph_membership',
    'm_nu',
    'm_nu_loop',
    'm_nu_outcome',
)


class Outcome(StrEnum):
    WITNESS = 'witness'
    OBSTRUCTED = 'obstructed'
    UNKNOWN = 'unknown'


class Decomposition(BaseModel):
    """
    `witness` carries `f` and `c` with `h - k f = c`, so `m = f + 1/g` for `g = k/c`; `obstructed` means a loop in
    `Z(k)` on which `h` winds, so no decomposition exists; `unknown` claims nothing.
    """

    model_config = ConfigDict(frozen=True)

    outcome: Outcome
    f: UniPolyQ | None = None
    c: GaussianRational | None = None
    winding: int | None = None
    message: str


def poly_decompose_univariate(h: UniPolyQ, k: UniPolyQ) -> tuple[UniPolyQ, GaussianRational] | None:
    """
    Polynomial `f` and nonzero constant `c` with `h - k f = c`, or `None` when no polynomial witness exists.
    """
    if h.is_zero and k.is_zero:
        raise BothZeroError('h and k are both zero')
    common = gcd(h, k)
    if not common.is_constant:
        raise CommonFactorError(f'h and k share the factor {common}')

    if k.is_zero:
        # h is a nonzero constant here, m has no finite values
        f, c = UniPolyQ(), h.leading
    elif k.is_constant:
        # trivial decomposition m = (m - 1) + 1/1, scaled so that g = k/c = 1
        c = k.leading
        f = (h - k) // k
    else:
        f, r = divmod(h, k)
        if not r.is_constant or r.is_zero:
            return None
        c = r.leading

    if h - k * f != UniPolyQ.constant(c):
        raise VerificationFailedError(f'h - k*f != {c}')
    return f, c


def decompose(h: UniPolyQ, k: UniPolyQ) -> Decomposition:
    witness = poly_decompose_univariate(h, k)
    if witness is None:
        return Decomposition(outcome=Outcome.UNKNOWN, message='no polynomial witness')
    f, c = witness
    return Decomposition(outcome=Outcome.WITNESS, f=f, c=c, message=f'm = ({f}) + 1/(({k})/({c}))')


def winding_number(loop: Sequence[complex] | np.ndarray) -> int:
    """
    Winding number about 0 of the closed loop through the samples, taken in order and back to the first.
    """
    z = np.asarray(loop, dtype=complex)
    if z.size == 0:
        raise ZeroSampleError('a loop needs at least one sample')
    if np.any(z == 0):
        raise ZeroSampleError(f'sample {int(np.flatnonzero(z == 0)[0])} is zero')
    ratios = np.roll(z, -1) / z
    if np.any(np.abs(ratios - 1) >= 1):
        raise UnderResolvedLoopError('consecutive samples are too far apart to track the argument')
    turns = float(np.sum(np.angle(ratios))) / (2 * math.pi)
    winding = round(turns)
    if abs(turns - winding) >= 1e-6:
        raise VerificationFailedError(f'argument change {turns} turns is not an integer')
    return winding


def graph_membership(h: PolyMap, k: PolyMap, x: Sequence[complex] | np.ndarray, y: complex) -> bool:
    """
    Whether `(x, y)` lies in the complement of the graph of `m = h/k`; points over poles of `m` always do.
    """
    hx, kx = h(x), k(x)
    if abs(hx) + abs(kx) <= 1e-12:
        raise CommonZeroError('h and k vanish together at x')
    return abs(kx * y - hx) > 1e-12 * (1 + abs(hx))


class MeromorphicFamily(BaseModel):
    """
    `m = h/k` on `C^n`, with `h` and `k` polynomial.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    h: PolyMap
    k: PolyMap


def m_nu(nu: int) -> MeromorphicFamily:
    """
    `m_ν = x/(x y^ν - 1)` on `C^2`.
    """
    if nu < 1:
        raise PreconditionError(f'nu must be positive, got {nu}')
    k = PolyMap.monomial(1, (1, nu)) - PolyMap.constant(1, 2)
    return MeromorphicFamily(name=f'm_{nu}', h=PolyMap.variable(0, 2), k=k)


def m_nu_loop(nu: int, samples: int) -> np.ndarray:
    """
    Points `(y^-ν, y)` of `Z(x y^ν - 1)` for `y = e^{iθ}` at `samples` equally spaced angles.
    """
    y = np.exp(2j * math.pi * np.arange(samples) / samples)
    return np.stack([y**-nu, y], axis=1)


def m_nu_outcome(nu: int, samples: int = 512) -> Decomposition:
    family = m_nu(nu)
    with logfire.span('winding obstruction {name=} {samples=}', name=family.name, samples=samples):
        points = m_nu_loop(nu, samples)
        residual = max(abs(family.k(p)) for p in points)
        if residual > 1e-9:
            raise VerificationFailedError(f'loop leaves Z(k), |k| reaches {residual}')
        winding = winding_number([family.h(p) for p in points])
        logfire.info('{name=} {winding=}', name=family.name, winding=winding)
    if winding:
        return Decomposition(
            outcome=Outcome.OBSTRUCTED,
            winding=winding,
            message=f'h winds {winding} times on a loop in Z(k): no f + 1/g decomposition',
        )
    return Decomposition(outcome=Outcome.UNKNOWN, winding=0, message='zero winding on the sampled loop')
