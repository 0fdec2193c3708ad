"""
The covering space `Y → X` of `X = {(x, y) : g(x)y ≠ 1}` and its sprays.

`Y` is the quotient of triples `[x, y, k]` (`k` an integer layer) by `[x, y, k] ~ [x, y', k']` when
`g(x)(y - y') = (k - k')2πi` with `g(x) ≠ 0`, and `π[x, y, k] = (x, -φ(g(x), y))`.
"""

from __future__ import annotations as _annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..common.errors import DimensionMismatchError, NoSamplesError, NotInChartError, PreconditionError, RangeError
from .poly import PolyMap

__all__ = (
    'CoveredPoint',
    'GraphPoint',
    'HypersurfacePoint',
    'LimitCheck',
    'phi',
    'pi_cover',
    'equivalent',
    'transition',
    'tilde_sigma0',
    'tilde_sigma',
    'shift_layer',
    'concrete_embedding',
    'embedding_residual',
    'shear',
    'unshear',
    'fibre_representatives',
    'fibre_spray',
    'localise_limit_check',
)

TWO_PI_I = 2j * math.pi
ZERO_TOL = 1e-12
LIMIT_TOL = 1e-6
Chart = Literal['auto', 'U1', 'U2']


@dataclass(frozen=True, slots=True)
class CoveredPoint:
    """
    Representative `[x, y, k]` of a point of `Y`; equality of points is `equivalent()`, not `==`.
    """

    x: tuple[complex, ...]
    y: complex
    k: int

    @classmethod
    def of(cls, x: Sequence[complex] | np.ndarray, y: complex, k: int) -> CoveredPoint:
        return cls(tuple(complex(v) for v in x), complex(y), int(k))


@dataclass(frozen=True, slots=True)
class GraphPoint:
    x: tuple[complex, ...]
    y: complex

    @classmethod
    def of(cls, x: Sequence[complex] | np.ndarray, y: complex) -> GraphPoint:
        return cls(tuple(complex(v) for v in x), complex(y))


@dataclass(frozen=True, slots=True)
class HypersurfacePoint:
    """
    Point `(x, w, z)` of `{1 - g(x)w = e^z}`.
    """

    x: tuple[complex, ...]
    w: complex
    z: complex


def _expm1(z: complex) -> complex:
    # e^z - 1 without cancellation near z = 0
    a, b = z.real, z.imag
    try:
        re = math.expm1(a) * math.cos(b) - 2 * math.sin(b / 2) ** 2
        im = math.exp(a) * math.sin(b)
    except OverflowError as exc:
        raise RangeError(f'exp({z}) overflows') from exc
    return complex(re, im)


def _exp(z: complex) -> complex:
    try:
        return cmath.exp(z)
    except OverflowError as exc:
        raise RangeError(f'exp({z}) overflows') from exc


def phi(x: complex, y: complex) -> complex:
    """
    `(e^{xy} - 1)/x`, and `y` at `x = 0`.

    Small `xy` or small `x` use the series `y Σ (xy)^j/(j+1)!`.
    """
    x, y = complex(x), complex(y)
    xy = x * y
    if abs(xy) < 1 and (abs(xy) < 1e-4 or abs(x) < 1e-8):
        total = term = 1 + 0j
        for j in range(1, 40):
            term *= xy / (j + 1)
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return y * total
    value = _expm1(xy) / x
    if not cmath.isfinite(value):
        raise RangeError(f'phi({x}, {y}) is not finite')
    return value


def _x(p: CoveredPoint | GraphPoint) -> np.ndarray:
    return np.array(p.x, dtype=complex)


def pi_cover(g: PolyMap, p: CoveredPoint) -> GraphPoint:
    return GraphPoint(p.x, -phi(g(_x(p)), p.y))


def equivalent(g: PolyMap, p1: CoveredPoint, p2: CoveredPoint) -> bool:
    if len(p1.x) != len(p2.x):
        return False
    if any(abs(a - b) > ZERO_TOL for a, b in zip(p1.x, p2.x)):
        return False
    if p1.k == p2.k and abs(p1.y - p2.y) <= 1e-9 * (1 + abs(p1.y)):
        return True
    gx = g(_x(p1))
    if abs(gx) <= ZERO_TOL:
        return False
    dk = p1.k - p2.k
    return abs(gx * (p1.y - p2.y) - dk * TWO_PI_I) <= 1e-9 * (1 + abs(dk))


def transition(
    g: PolyMap, x: Sequence[complex] | np.ndarray, s: Sequence[complex], t: complex
) -> tuple[np.ndarray, complex]:
    """
    Fibre coordinates `(s, t)` of the first trivialization expressed in the second one: `(g(x)²s, t)`.
    """
    gx = g(np.asarray(x, dtype=complex))
    return gx**2 * np.asarray(s, dtype=complex), complex(t)


def tilde_sigma0(
    g: PolyMap, p: CoveredPoint, s: Sequence[complex] | np.ndarray, t: complex, chart: Chart = 'auto'
) -> CoveredPoint:
    """
    The spray on `Y` dominating at the zeroth layer.

    In chart `U1` (points off `{g = 0, k = 0}`) it reads `[x + g²s, y - 2πik/g + t, 0]` where `g(x) ≠ 0` and
    `[x, y - 2πik g'(x)(s) + t, k]` where `g(x) = 0`; in chart `U2` (layer 0) it is the translation
    `[x + s, y + t, 0]`. `auto` picks `U1` off layer 0 and `U2` on it.
    """
    x = _x(p)
    s = np.asarray(s, dtype=complex)
    if s.shape != x.shape:
        raise DimensionMismatchError(f'spray direction has shape {s.shape}, expected {x.shape}')
    if chart == 'auto':
        chart = 'U1' if p.k != 0 else 'U2'

    if chart == 'U2':
        if p.k != 0:
            raise NotInChartError(f'layer {p.k} representative is not in the layer-0 chart')
        return CoveredPoint.of(x + s, p.y + t, 0)

    gx = g(x)
    if abs(gx) > ZERO_TOL:
        return CoveredPoint.of(x + gx**2 * s, p.y - p.k * TWO_PI_I / gx + t, 0)
    if p.k == 0:
        raise NotInChartError('points of layer 0 over g = 0 are only covered by the layer-0 chart')
    return CoveredPoint.of(x, p.y - p.k * TWO_PI_I * g.derivative(x, s) + t, p.k)


def shift_layer(p: CoveredPoint, by: int) -> CoveredPoint:
    """
    Deck transformation `[x, y, k] ↦ [x, y, k + by]`.
    """
    return CoveredPoint(p.x, p.y, p.k + by)


def tilde_sigma(
    g: PolyMap, p: CoveredPoint, s: Sequence[complex] | np.ndarray, t: complex, layer: int = 0
) -> CoveredPoint:
    """
    The spray dominating at layer `layer`, conjugate to `tilde_sigma0` by the relabelling `k ↦ k - layer`.
    """
    return shift_layer(tilde_sigma0(g, shift_layer(p, -layer), s, t), layer)


def concrete_embedding(g: PolyMap, p: CoveredPoint) -> HypersurfacePoint:
    """
    `[x, y, k] ↦ (x, -φ(g(x), y), g(x)y - 2πik)`, constant on equivalence classes.
    """
    gx = g(_x(p))
    return HypersurfacePoint(p.x, -phi(gx, p.y), gx * p.y - p.k * TWO_PI_I)


def embedding_residual(g: PolyMap, q: HypersurfacePoint) -> float:
    gx = g(np.array(q.x, dtype=complex))
    rhs = _exp(q.z)
    return abs((1 - gx * q.w) - rhs) / (1 + abs(rhs))


def shear(f: PolyMap, p: GraphPoint) -> GraphPoint:
    """
    `(x, y) ↦ (x, y + f(x))`, taking the complement of the graph of `1/g` to that of `f + 1/g`.
    """
    return GraphPoint(p.x, p.y + f(_x(p)))


def unshear(f: PolyMap, p: GraphPoint) -> GraphPoint:
    return GraphPoint(p.x, p.y - f(_x(p)))


def fibre_representatives(g: PolyMap, p: GraphPoint, branches: range = range(-2, 3)) -> list[CoveredPoint]:
    """
    Points of `π⁻¹(p)` for the given window of branches: one per layer over `g(x) = 0`, one per branch of
    `log(1 - g(x)y)` otherwise.
    """
    x = _x(p)
    gx = g(x)
    if abs(gx) <= ZERO_TOL:
        return [CoveredPoint(p.x, -p.y, k) for k in branches]
    base = 1 - gx * p.y
    if abs(base) <= ZERO_TOL:
        raise PreconditionError(f'{p} lies on the graph g(x)y = 1')
    log = cmath.log(base)
    return [CoveredPoint(p.x, (log + j * TWO_PI_I) / gx, 0) for j in branches]


def fibre_spray(g: PolyMap, x: Sequence[complex] | np.ndarray, y: complex, t: complex) -> GraphPoint:
    """
    `s(x, y, t) = (x, y e^{t g(x)} - φ(g(x), t))`, a dominating spray on `X` preserving the fibres of `x`.
    """
    x = np.asarray(x, dtype=complex)
    gx = g(x)
    if abs(1 - gx * y) <= ZERO_TOL:
        raise PreconditionError('(x, y) must satisfy g(x)y != 1')
    return GraphPoint.of(x, y * _exp(t * gx) - phi(gx, t))


@dataclass(frozen=True, slots=True)
class LimitCheck:
    estimates: tuple[complex, ...]
    target: complex
    verdict: Literal['converged', 'diverged', 'inconclusive']
    skipped: int

    @property
    def final_error(self) -> float:
        return abs(self.estimates[-1] - self.target)


def localise_limit_check(
    g: PolyMap,
    x0: Sequence[complex] | np.ndarray,
    s: Sequence[complex] | np.ndarray,
    direction: Sequence[complex] | np.ndarray,
    steps: int = 20,
    twist: int = 2,
) -> LimitCheck:
    """
    Evaluate `1/g(x) - 1/g(x + g(x)^twist s)` at `x_j = x0 + 2^-j d`, `j = 1..steps`.

    With `twist = 2` the estimates tend to `g'(x0)(s)`; `twist = 1` is the single twist, which blows up. The verdict is
    "converged" when the last estimate is within `LIMIT_TOL` of the target.
    """
    x0 = np.asarray(x0, dtype=complex)
    s = np.asarray(s, dtype=complex)
    d = np.asarray(direction, dtype=complex)
    if not (x0.shape == s.shape == d.shape):
        raise DimensionMismatchError('x0, s and the direction must have the same length')
    if abs(g(x0)) > ZERO_TOL:
        raise PreconditionError(f'g(x0) = {g(x0)} is not zero')
    target = g.derivative(x0, s)

    estimates: list[complex] = []
    skipped = 0
    for j in range(1, steps + 1):
        xj = x0 + 2.0**-j * d
        gx = g(xj)
        g_shifted = g(xj + gx**twist * s)
        if abs(gx) < 1e-300 or g_shifted == 0:
            skipped += 1
            continue
        estimates.append(1 / gx - 1 / g_shifted)
    if not estimates:
        raise NoSamplesError('g vanishes at every sample point along the direction')

    final = estimates[-1]
    if abs(final - target) <= LIMIT_TOL:
        verdict = 'converged'
    elif abs(final) > 1e3:
        verdict = 'diverged'
    else:
        verdict = 'inconclusive'
    return LimitCheck(tuple(estimates), target, verdict, skipped)
