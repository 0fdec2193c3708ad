from __future__ import annotations as _annotations

from collections.abc import Iterable
from itertools import combinations

import logfire

from ..arrangement import Arrangement, Circuit, ClassificationReport
from ..common.errors import VerificationFailedError
from ..exactlin import VectorQ, kernel_basis, rank

__all__ = 'circuits', 'relation_sum', 'attach_circuits'


def circuits(arr: Arrangement) -> list[Circuit]:
    """
    All minimal linear relations among the forms, sorted by size then by index tuple.

    Subsets are visited by increasing size. A subset with a dependent facet (a subset one smaller) is dependent
    without a rank computation and is not minimal, so only subsets whose facets are all independent get their rank
    checked. Forms are nonzero and pairwise non-proportional, hence no circuit has fewer than 3 elements, and none
    has more than `n+2`.
    """
    with logfire.span('enumerate circuits {n=} {num_forms=}', n=arr.n, num_forms=arr.num_forms) as span:
        found: list[Circuit] = []
        dependent_below: set[tuple[int, ...]] = set()
        for size in range(3, min(arr.num_forms, arr.n + 2) + 1):
            dependent: set[tuple[int, ...]] = set()
            for subset in combinations(arr.labels, size):
                if dependent_below and any(facet in dependent_below for facet in combinations(subset, size - 1)):
                    dependent.add(subset)
                    continue
                if rank(arr.matrix(subset)) == size:
                    continue
                dependent.add(subset)
                circuit = _circuit(arr, subset)
                logfire.debug(
                    'circuit {indices=} {coefficients=}',
                    indices=subset,
                    coefficients=[str(c) for c in circuit.coefficients],
                )
                found.append(circuit)
            dependent_below = dependent
        span.set_attribute('circuit_count', len(found))
        return found


def _circuit(arr: Arrangement, subset: tuple[int, ...]) -> Circuit:
    # a circuit has nullity exactly 1, so its relation is unique up to scale
    relations = kernel_basis(arr.matrix(subset).transpose())
    if len(relations) != 1:
        raise VerificationFailedError(f'{subset} has {len(relations)} independent relations, expected 1')
    circuit = Circuit(indices=subset, coefficients=tuple(relations[0]))
    if not relation_sum(circuit, arr).is_zero:
        raise VerificationFailedError(f'relation on {subset} does not vanish')
    return circuit


def relation_sum(circuit: Circuit, arr: Arrangement, subset: Iterable[int] | None = None) -> VectorQ:
    """
    Coefficients of `Σ_{j∈J} c_j F_j`, over the whole circuit when `subset` is omitted.
    """
    labels = circuit.indices if subset is None else tuple(subset)
    total = VectorQ.zeros(arr.n + 1)
    for j in labels:
        total = total + arr.form(j).coefficients.scale(circuit.coefficient_of(j))
    return total


def attach_circuits(report: ClassificationReport, arr: Arrangement) -> ClassificationReport:
    return report.model_copy(update={'circuits': tuple(circuits(arr))})
