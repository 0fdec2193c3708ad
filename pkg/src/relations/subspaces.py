from __future__ import annotations as _annotations

from collections.abc import Sequence
from itertools import combinations
from typing import Literal

from pydantic import BaseModel, ConfigDict

import logfire

from ..arrangement import Arrangement, Circuit, LinearForm, ProjectivePoint, complement_membership
from ..common.errors import DimensionMismatchError, PointInBaseLocusError, PointOnArrangementError, PreconditionError
from ..exactlin import MatrixQ, VectorQ, kernel_basis, rank
from .circuits import circuits, relation_sum

__all__ = (
    'DiagonalHyperplane',
    'AssociatedSubspace',
    'ObstructionEntry',
    'ObstructionReport',
    'TangentSubspace',
    'diagonal_hyperplanes',
    'base_locus',
    'associated_subspace_through',
    'entire_curve_obstructions',
    'tangent_direction_subspaces',
    'verify_curve_in_subspace',
)


class DiagonalHyperplane(BaseModel):
    model_config = ConfigDict(frozen=True)

    form: LinearForm
    circuit_index: int
    subset: tuple[int, ...]


class AssociatedSubspace(BaseModel):
    """
    Span of the base locus `B = ∩ ker F_j` of a circuit and one more point, so `B` has codimension 1 in it.
    """

    model_config = ConfigDict(frozen=True)

    base_locus_basis: tuple[VectorQ, ...]
    extension_point: ProjectivePoint
    span_basis: tuple[VectorQ, ...]

    @property
    def projective_dimension(self) -> int:
        return len(self.span_basis) - 1

    def conditions(self) -> list[LinearForm]:
        """
        Linear forms cutting the subspace out, a basis of its annihilator.
        """
        return [LinearForm(v) for v in kernel_basis(MatrixQ(self.span_basis))]

    def contains(self, vector: VectorQ) -> bool:
        return rank(MatrixQ([*self.span_basis, vector])) == len(self.span_basis)


class ObstructionEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    circuit_index: int
    circuit: Circuit
    diagonal_hyperplanes: tuple[DiagonalHyperplane, ...]
    associated_subspace: AssociatedSubspace | None


class ObstructionReport(BaseModel):
    """
    For each circuit, the subspaces one of which contains every entire curve through `point`.
    """

    model_config = ConfigDict(frozen=True)

    point: ProjectivePoint
    entries: tuple[ObstructionEntry, ...]

    @property
    def is_empty(self) -> bool:
        return not self.entries


class TangentSubspace(BaseModel):
    """
    Linear conditions on tangent vectors at a point, in the affine chart `x_chart = 1`.

    Each condition lists the coefficients of `du_i` for `i ≠ chart` in increasing `i`.
    """

    model_config = ConfigDict(frozen=True)

    source: Literal['diagonal', 'associated']
    circuit_index: int
    chart: int
    conditions: tuple[VectorQ, ...]


def diagonal_hyperplanes(circuit: Circuit, arr: Arrangement, circuit_index: int = 0) -> list[DiagonalHyperplane]:
    """
    Distinct hyperplanes `Σ_{j∈J} c_j F_j = 0` with `2 ≤ |J| ≤ k-2`.

    `J` and its complement give the same hyperplane since the full sum vanishes; each hyperplane is reported once,
    labelled by the lexicographically least `J` producing it, and the list is sorted by that label.
    """
    generators: dict[VectorQ, list[tuple[int, ...]]] = {}
    for size in range(2, circuit.size - 1):
        for subset in combinations(circuit.indices, size):
            key = relation_sum(circuit, arr, subset).normalized()
            generators.setdefault(key, []).append(subset)

    diagonals = [
        DiagonalHyperplane(form=LinearForm(key), circuit_index=circuit_index, subset=min(subsets))
        for key, subsets in generators.items()
    ]
    diagonals.sort(key=lambda d: d.subset)
    return diagonals


def base_locus(circuit: Circuit, arr: Arrangement) -> list[VectorQ]:
    return kernel_basis(arr.matrix(circuit.indices))


def associated_subspace_through(circuit: Circuit, arr: Arrangement, p: ProjectivePoint) -> AssociatedSubspace:
    arr.check_point(p)
    basis = base_locus(circuit, arr)
    if basis and rank(MatrixQ([*basis, p.coordinates])) == len(basis):
        raise PointInBaseLocusError(f'{p} lies in the base locus of the relation on {circuit.indices}')
    return AssociatedSubspace(
        base_locus_basis=tuple(basis),
        extension_point=p,
        span_basis=(*basis, p.coordinates),
    )


def entire_curve_obstructions(arr: Arrangement, p: ProjectivePoint) -> ObstructionReport:
    if not complement_membership(arr, p):
        raise PointOnArrangementError(f'{p} lies on a hyperplane of the arrangement')
    with logfire.span('entire curve obstructions at {point}', point=str(p)):
        entries = []
        for idx, circuit in enumerate(circuits(arr)):
            through_p = tuple(d for d in diagonal_hyperplanes(circuit, arr, idx) if not d.form(p.coordinates))
            entries.append(
                ObstructionEntry(
                    circuit_index=idx,
                    circuit=circuit,
                    diagonal_hyperplanes=through_p,
                    associated_subspace=associated_subspace_through(circuit, arr, p),
                )
            )
        return ObstructionReport(point=p, entries=tuple(entries))


@logfire.instrument('tangent direction subspaces', extract_args=False)
def tangent_direction_subspaces(
    arr: Arrangement, p: ProjectivePoint, report: ObstructionReport | None = None
) -> list[TangentSubspace]:
    """
    Proper subspaces of the tangent space at `p`, one of which contains `df(0)` for every entire curve `f` with
    `f(0) = p`.

    Pass the `report` of `entire_curve_obstructions(arr, p)` when it is already at hand to skip recomputing it.
    """
    if report is None:
        report = entire_curve_obstructions(arr, p)
    elif report.point != p:
        raise PreconditionError(f'obstruction report is for {report.point}, not {p}')
    chart = p.chart_index
    subspaces = []
    for entry in report.entries:
        for d in entry.diagonal_hyperplanes:
            subspaces.append(
                TangentSubspace(
                    source='diagonal',
                    circuit_index=entry.circuit_index,
                    chart=chart,
                    conditions=(_differential(d.form.coefficients, chart),),
                )
            )
        if entry.associated_subspace is not None:
            subspaces.append(
                TangentSubspace(
                    source='associated',
                    circuit_index=entry.circuit_index,
                    chart=chart,
                    conditions=tuple(
                        _differential(f.coefficients, chart) for f in entry.associated_subspace.conditions()
                    ),
                )
            )
    return subspaces


def _differential(coefficients: VectorQ, chart: int) -> VectorQ:
    # a form vanishing at p restricts to the chart x_chart = 1 as an affine function; its differential drops the
    # constant term
    return VectorQ(a for i, a in enumerate(coefficients) if i != chart)


def verify_curve_in_subspace(lift_samples: Sequence[VectorQ], subspace_conditions: Sequence[LinearForm]) -> bool:
    for condition in subspace_conditions:
        for sample in lift_samples:
            if len(sample) != len(condition.coefficients):
                raise DimensionMismatchError(
                    f'sample has {len(sample)} coordinates, condition has {len(condition.coefficients)}'
                )
    return all(not condition(sample) for condition in subspace_conditions for sample in lift_samples)
