"""
Randomized batch checks of the covering space, spray and localisation identities.
"""

from __future__ import annotations as _annotations

import math
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

import logfire

from .cover import (
    LIMIT_TOL,
    TWO_PI_I,
    CoveredPoint,
    concrete_embedding,
    embedding_residual,
    equivalent,
    fibre_spray,
    localise_limit_check,
    phi,
    pi_cover,
    tilde_sigma0,
)
from .poly import PolyMap

__all__ = (
    'VerificationRecord',
    'random_cubic',
    'covering_suite',
    'fibre_spray_suite',
    'localisation_suite',
    'run_suites',
    'SUITES',
)

IDENTITY_TOL = 1e-9
# cross-layer representatives have |y| ~ 2π|k|/|g|, which loses digits as g approaches 0
CROSS_LAYER_MIN_G = 1e-3


class VerificationRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    checked: int
    passed: int
    max_error: float

    @property
    def ok(self) -> bool:
        return self.checked > 0 and self.passed == self.checked


class _Tally:
    __slots__ = 'name', 'tolerance', 'checked', 'passed', 'max_error'

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.checked = 0
        self.passed = 0
        self.max_error = 0.0

    def relative(self, actual: complex | np.ndarray, expected: complex | np.ndarray) -> None:
        error = float(np.max(np.abs(np.asarray(actual) - np.asarray(expected)) / (1 + np.abs(np.asarray(expected)))))
        self.check(error <= self.tolerance, error)

    def check(self, ok: bool, error: float = 0.0) -> None:
        self.checked += 1
        self.passed += ok
        self.max_error = max(self.max_error, error)

    def record(self) -> VerificationRecord:
        return VerificationRecord(name=self.name, checked=self.checked, passed=self.passed, max_error=self.max_error)


def random_cubic(rng: np.random.Generator, n: int) -> PolyMap:
    """
    Polynomial of total degree at most 3 in `n` variables with standard complex normal coefficients.
    """
    shape = (4,) * n
    coefficients = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    coefficients[np.indices(shape).sum(axis=0) > 3] = 0
    return PolyMap(coefficients)


def _disc(rng: np.random.Generator, size: int | None = None, radius: float = 1.0) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * math.pi * rng.uniform(size=size))


def covering_suite(rng: np.random.Generator, samples: int) -> list[VerificationRecord]:
    residence = _Tally('covering residence', IDENTITY_TOL)
    embedding = _Tally('concrete embedding', IDENTITY_TOL)
    respects = _Tally('pi respects equivalence', IDENTITY_TOL)
    base_point = _Tally('spray base point', IDENTITY_TOL)
    transition = _Tally('transition consistency', IDENTITY_TOL)
    well_defined = _Tally('spray well-defined', IDENTITY_TOL)

    with logfire.span('covering suite {samples=}', samples=samples):
        for _ in range(samples):
            n = int(rng.integers(1, 4))
            g = random_cubic(rng, n)
            x = _disc(rng, n)
            gx = g(x)
            p = CoveredPoint.of(x, complex(_disc(rng)), int(rng.integers(-3, 4)))

            e = np.exp(gx * p.y)
            residence.relative(1 - gx * pi_cover(g, p).y, e)
            embedding.check((err := embedding_residual(g, concrete_embedding(g, p))) <= IDENTITY_TOL, err)

            base_point.check(equivalent(g, tilde_sigma0(g, p, np.zeros(n), 0), p))

            s, t = _disc(rng, n), complex(_disc(rng))
            if abs(gx) > CROSS_LAYER_MIN_G:
                layer0 = CoveredPoint.of(x, p.y, 0)
                via_u1 = tilde_sigma0(g, layer0, s, t, chart='U1')
                via_u2 = tilde_sigma0(g, layer0, gx**2 * s, t, chart='U2')
                transition.relative(np.array([*via_u1.x, via_u1.y]), np.array([*via_u2.x, via_u2.y]))

                other_k = int(rng.integers(-3, 4))
                q = CoveredPoint(p.x, p.y - (p.k - other_k) * TWO_PI_I / gx, other_k)
                respects.check(equivalent(g, p, q))
                respects.relative(pi_cover(g, q).y, pi_cover(g, p).y)
                well_defined.check(
                    equivalent(g, tilde_sigma0(g, p, s, t, chart='U1'), tilde_sigma0(g, q, s, t, chart='U1'))
                )

    return [r.record() for r in (residence, embedding, respects, base_point, transition, well_defined)]


def fibre_spray_suite(rng: np.random.Generator, samples: int) -> list[VerificationRecord]:
    identity = _Tally('fibre spray identity', IDENTITY_TOL)
    base_point = _Tally('fibre spray base point', IDENTITY_TOL)
    dominating = _Tally('fibre spray derivative', LIMIT_TOL)
    step = 1e-5

    with logfire.span('fibre spray suite {samples=}', samples=samples):
        for _ in range(samples):
            n = int(rng.integers(1, 4))
            g = random_cubic(rng, n)
            x = _disc(rng, n)
            gx = g(x)
            y = complex(_disc(rng))
            if abs(1 - gx * y) <= 1e-6:
                continue
            t = complex(_disc(rng))

            s2 = fibre_spray(g, x, y, t).y
            identity.relative(1 - gx * s2, np.exp(t * gx) * (1 - gx * y))
            base_point.relative(fibre_spray(g, x, y, 0).y, y)

            central = (fibre_spray(g, x, y, step).y - fibre_spray(g, x, y, -step).y) / (2 * step)
            dominating.relative(central, gx * y - 1)

    return [r.record() for r in (identity, base_point, dominating)]


def localisation_suite(rng: np.random.Generator, samples: int = 10, steps: int = 20) -> list[VerificationRecord]:
    """
    `g(x) = x` at `x0 = 0`: the double twist converges to `s`, the single twist diverges.
    """
    g = PolyMap.variable(0, 1)
    converges = _Tally('localisation double twist', LIMIT_TOL)
    diverges = _Tally('localisation single twist', 0)
    phi_branches = _Tally('phi branch agreement', 1e-10)

    with logfire.span('localisation suite {samples=} {steps=}', samples=samples, steps=steps):
        for _ in range(samples):
            s = _disc(rng, 1, radius=0.9)
            check = localise_limit_check(g, [0], s, [1], steps=steps)
            converges.check(check.verdict == 'converged', check.final_error)

        single = localise_limit_check(g, [0], [1], [1], steps=steps, twist=1)
        diverges.check(single.verdict == 'diverged')

        for _ in range(samples):
            x = 10 ** rng.uniform(-12, -6) * np.exp(2j * math.pi * rng.uniform())
            y = complex(_disc(rng, radius=2.0))
            phi_branches.relative(phi(x, y), np.expm1(x * y) / x)

    return [r.record() for r in (converges, diverges, phi_branches)]


SUITES: dict[str, Callable[[np.random.Generator, int], list[VerificationRecord]]] = {
    'covering': covering_suite,
    'fibre-spray': fibre_spray_suite,
    'localisation': lambda rng, samples: localisation_suite(rng),
}


def run_suites(rng: np.random.Generator, samples: int, names: list[str] | None = None) -> list[VerificationRecord]:
    records = []
    for name in names or list(SUITES):
        records.extend(SUITES[name](rng, samples))
    failed = [r.name for r in records if not r.ok]
    if failed:
        logfire.warn('verification failures {failed=}', failed=failed)
    return records
