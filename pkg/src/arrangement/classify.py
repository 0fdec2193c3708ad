from __future__ import annotations as _annotations

from itertools import combinations
from typing import Any

from pydantic import BaseModel, ValidationError

import logfire

from ..common.errors import MalformedDocumentError, PreconditionError, VerificationFailedError
from ..exactlin import MatrixQ, VectorQ, inverse, rank
from .models import (
    Arrangement,
    ClassificationReport,
    GeneralPosition,
    ProductProfile,
    ProjectivePoint,
    Reason,
    Verdict,
)

__all__ = (
    'ArrangementDocument',
    'parse_arrangement',
    'is_general_position',
    'classify',
    'oka_witness',
    'product_profile',
    'complement_membership',
)


class ArrangementDocument(BaseModel):
    n: int
    # scalars are checked by GaussianRational.coerce so malformed ones get their own error code
    forms: list[list[Any]]


def parse_arrangement(text: str | bytes) -> Arrangement:
    try:
        doc = ArrangementDocument.model_validate_json(text)
    except ValidationError as exc:
        raise MalformedDocumentError(f'invalid arrangement document: {exc.error_count()} errors') from exc
    arr = Arrangement.from_rows(doc.n, doc.forms)
    logfire.debug('parsed arrangement {n=} {num_forms=}', n=arr.n, num_forms=arr.num_forms)
    return arr


def is_general_position(arr: Arrangement) -> GeneralPosition:
    """
    Every subset of at most `n+1` forms must be linearly independent.

    Subsets are scanned by size then lexicographically, so the first failure is the smallest, lexicographically
    least dependent subset.
    """
    for size in range(1, min(arr.num_forms, arr.n + 1) + 1):
        for subset in combinations(arr.labels, size):
            if rank(arr.matrix(subset)) < size:
                return GeneralPosition(False, subset)
    return GeneralPosition(True, None)


def classify(arr: Arrangement) -> ClassificationReport:
    with logfire.span('classify arrangement {n=} {num_forms=}', n=arr.n, num_forms=arr.num_forms) as span:
        general, failing = is_general_position(arr)
        if general and arr.num_forms <= arr.n + 1:
            report = ClassificationReport(
                n=arr.n,
                num_forms=arr.num_forms,
                verdict=Verdict.OKA,
                reason=Reason.GENERAL_POSITION_FEW_FORMS,
                dominable_by_cn=True,
                c_connected=True,
                chain_c_connected=True,
                oka_witness=oka_witness(arr),
                product_profile=product_profile(arr),
            )
        else:
            # too many forms in general position: the obstruction is a finite collection of hyperplanes
            # containing all entire curves, which isn't constructed here
            report = ClassificationReport(
                n=arr.n,
                num_forms=arr.num_forms,
                verdict=Verdict.NOT_OKA,
                reason=Reason.GENERAL_POSITION_TOO_MANY if general else Reason.NOT_GENERAL_POSITION,
                dominable_by_cn=False,
                c_connected=False,
                chain_c_connected=False,
                failing_subset=failing,
            )
        span.set_attribute('verdict', str(report.verdict))
        span.set_attribute('reason', str(report.reason))
        return report


@logfire.instrument('coordinate change witness', extract_args=False)
def oka_witness(arr: Arrangement) -> MatrixQ:
    """
    Invertible `M` with `F_j∘M = x_{j-1}` for every form, i.e. coordinates in which the hyperplanes are the first
    `N` coordinate hyperplanes.

    The forms are completed to a basis with unit vectors (in index order) and the resulting matrix is inverted.
    """
    general, _ = is_general_position(arr)
    if not general or arr.num_forms > arr.n + 1:
        raise PreconditionError('a coordinate change exists only for at most n+1 forms in general position')

    size = arr.n + 1
    rows = [f.coefficients for f in arr.forms]
    for i in range(size):
        if len(rows) == size:
            break
        unit = VectorQ.unit(size, i)
        if rank(MatrixQ([*rows, unit])) > len(rows):
            rows.append(unit)

    m = inverse(MatrixQ(rows))
    if m is None:
        raise VerificationFailedError('completed basis is singular')
    _verify_witness(arr, m)
    return m


def _verify_witness(arr: Arrangement, m: MatrixQ) -> None:
    if rank(m) != arr.n + 1:
        raise VerificationFailedError('coordinate change is not invertible')
    for j, form in enumerate(arr.forms):
        pulled = form.compose(m).coefficients
        if pulled.first_nonzero() != j or any(pulled[i] for i in range(j + 1, len(pulled))):
            raise VerificationFailedError(f'form {j + 1} does not pull back to a multiple of x{j}')


def product_profile(arr: Arrangement) -> ProductProfile:
    if arr.num_forms == 0:
        return ProductProfile(punctured_factors=0, plane_factors=0, whole_projective_space=True)
    return ProductProfile(punctured_factors=arr.num_forms - 1, plane_factors=arr.n + 1 - arr.num_forms)


def complement_membership(arr: Arrangement, p: ProjectivePoint) -> bool:
    arr.check_point(p)
    return all(form(p.coordinates) for form in arr.forms)
