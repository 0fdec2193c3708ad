from __future__ import annotations as _annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Any, NamedTuple, Self

from pydantic import BaseModel, ConfigDict, GetCoreSchemaHandler, model_validator
from pydantic_core import core_schema

from ..common.errors import (
    DimensionMismatchError,
    DuplicateHyperplaneError,
    LengthMismatchError,
    MalformedDocumentError,
    ZeroFormError,
    ZeroPointError,
)
from ..exactlin import ONE, GaussianRational, MatrixQ, VectorQ

__all__ = (
    'LinearForm',
    'ProjectivePoint',
    'Arrangement',
    'Circuit',
    'Verdict',
    'Reason',
    'ProductProfile',
    'GeneralPosition',
    'ClassificationReport',
)


def _list_schema(cls: Any, build: Any) -> core_schema.CoreSchema:
    return core_schema.no_info_plain_validator_function(
        lambda v: v if isinstance(v, cls) else build(v),
        serialization=core_schema.plain_serializer_function_ser_schema(
            lambda v: v.to_strings(), when_used='json'
        ),
    )


@dataclass(frozen=True, slots=True)
class LinearForm:
    """
    Nonzero homogeneous linear form `Σ a_i x_i` in the coordinates `x_0..x_n`.

    The coefficients are kept as written; `normalized()` is the canonical representative of the hyperplane.
    """

    coefficients: VectorQ

    def __post_init__(self):
        if self.coefficients.is_zero:
            raise ZeroFormError('the zero form does not define a hyperplane')

    @classmethod
    def of(cls, values: Iterable[Any]) -> LinearForm:
        return cls(VectorQ(values))

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    def normalized(self) -> LinearForm:
        return LinearForm(self.coefficients.normalized())

    def same_hyperplane(self, other: LinearForm) -> bool:
        return self.coefficients.normalized() == other.coefficients.normalized()

    def __call__(self, point: Sequence[GaussianRational]) -> GaussianRational:
        return self.coefficients.dot(point)

    def compose(self, m: MatrixQ) -> LinearForm:
        """
        The pullback `F∘M`, i.e. `x ↦ F(Mx)`.
        """
        return LinearForm(self.coefficients @ m)

    def to_strings(self) -> list[str]:
        return self.coefficients.to_strings()

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            if a == 1:
                terms.append(f'x{i}')
            elif a == -1:
                terms.append(f'-x{i}')
            elif a.is_real:
                terms.append(f'{a}*x{i}')
            else:
                terms.append(f'({a})*x{i}')
        return ' + '.join(terms).replace('+ -', '- ')

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return _list_schema(cls, cls.of)


@dataclass(frozen=True, slots=True)
class ProjectivePoint:
    """
    Point `[x_0:...:x_n]`, stored with its first nonzero coordinate equal to 1.
    """

    coordinates: VectorQ

    def __post_init__(self):
        if self.coordinates.is_zero:
            raise ZeroPointError('all homogeneous coordinates are zero')
        object.__setattr__(self, 'coordinates', self.coordinates.normalized())

    @classmethod
    def of(cls, values: Iterable[Any]) -> ProjectivePoint:
        return cls(VectorQ(values))

    @property
    def n(self) -> int:
        return len(self.coordinates) - 1

    @property
    def chart_index(self) -> int:
        """
        Index of the affine chart `x_c ≠ 0` used for tangent computations, `x_c = 1` in canonical form.
        """
        idx = self.coordinates.first_nonzero()
        assert idx is not None
        return idx

    def to_strings(self) -> list[str]:
        return self.coordinates.to_strings()

    def __str__(self) -> str:
        return f'[{":".join(self.to_strings())}]'

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return _list_schema(cls, cls.of)


@dataclass(frozen=True, slots=True)
class Arrangement:
    """
    Distinct hyperplanes `F_1 = 0, ..., F_N = 0` in projective `n`-space.

    Forms are labelled `1..N` everywhere a subset of them is reported.
    """

    n: int
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        if self.n < 1:
            raise MalformedDocumentError(f'the projective dimension must be positive, got {self.n}')
        for label, form in enumerate(self.forms, start=1):
            if len(form.coefficients) != self.n + 1:
                raise LengthMismatchError(
                    f'form {label} has {len(form.coefficients)} coefficients, expected {self.n + 1}'
                )
        seen: dict[VectorQ, int] = {}
        for label, form in enumerate(self.forms, start=1):
            key = form.coefficients.normalized()
            if (first := seen.get(key)) is not None:
                raise DuplicateHyperplaneError(f'forms {first} and {label} define the same hyperplane')
            seen[key] = label

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Iterable[Any]]) -> Arrangement:
        forms = []
        for label, row in enumerate(rows, start=1):
            values = list(row)
            if len(values) != n + 1:
                raise LengthMismatchError(f'form {label} has {len(values)} coefficients, expected {n + 1}')
            forms.append(LinearForm.of(values))
        return cls(n=n, forms=tuple(forms))

    @property
    def num_forms(self) -> int:
        return len(self.forms)

    @property
    def labels(self) -> range:
        return range(1, len(self.forms) + 1)

    def form(self, label: int) -> LinearForm:
        return self.forms[label - 1]

    def matrix(self, labels: Iterable[int] | None = None) -> MatrixQ:
        """
        The selected forms stacked as coefficient rows.
        """
        chosen = self.labels if labels is None else labels
        return MatrixQ(self.form(j).coefficients for j in chosen)

    def permuted(self, order: Sequence[int]) -> Arrangement:
        if sorted(order) != list(self.labels):
            raise DimensionMismatchError(f'{list(order)} is not a permutation of the labels')
        return Arrangement(n=self.n, forms=tuple(self.form(j) for j in order))

    def check_point(self, point: ProjectivePoint) -> None:
        if point.n != self.n:
            raise LengthMismatchError(f'point has {point.n + 1} coordinates, expected {self.n + 1}')

    def __len__(self) -> int:
        return len(self.forms)


class Circuit(BaseModel):
    """
    A minimal linear relation `Σ c_j F_j = 0` among the forms labelled `indices`, with `c` first-coefficient-1.
    """

    model_config = ConfigDict(frozen=True)

    indices: tuple[int, ...]
    coefficients: tuple[GaussianRational, ...]

    @model_validator(mode='after')
    def _check_shape(self) -> Self:
        if len(self.indices) != len(self.coefficients):
            raise ValueError('a circuit needs one coefficient per index')
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError('circuit indices must be sorted and distinct')
        if not self.coefficients or self.coefficients[0] != ONE or not all(self.coefficients):
            raise ValueError('circuit coefficients must be nonzero with the first equal to 1')
        return self

    @property
    def size(self) -> int:
        return len(self.indices)

    def coefficient_of(self, label: int) -> GaussianRational:
        return self.coefficients[self.indices.index(label)]


class Verdict(StrEnum):
    OKA = 'Oka'
    NOT_OKA = 'NotOka'


class Reason(StrEnum):
    GENERAL_POSITION_FEW_FORMS = 'GeneralPositionFewForms'
    GENERAL_POSITION_TOO_MANY = 'GeneralPositionTooMany'
    NOT_GENERAL_POSITION = 'NotGeneralPosition'


class ProductProfile(BaseModel):
    """
    Shape of an Oka complement: `(C*)^punctured_factors × C^plane_factors`, or all of projective space.
    """

    model_config = ConfigDict(frozen=True)

    punctured_factors: int
    plane_factors: int
    whole_projective_space: bool = False


class GeneralPosition(NamedTuple):
    general: bool
    failing_subset: tuple[int, ...] | None


class ClassificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    num_forms: int
    verdict: Verdict
    reason: Reason
    dominable_by_cn: bool
    c_connected: bool
    chain_c_connected: bool
    oka_witness: MatrixQ | None = None
    product_profile: ProductProfile | None = None
    failing_subset: tuple[int, ...] | None = None
    circuits: tuple[Circuit, ...] | None = None

    @model_validator(mode='after')
    def _check_consistency(self) -> Self:
        oka = self.verdict == Verdict.OKA
        if oka != (self.reason == Reason.GENERAL_POSITION_FEW_FORMS) or oka != (self.oka_witness is not None):
            raise ValueError('Oka verdict, GeneralPositionFewForms and the witness must come together')
        if not oka and (self.dominable_by_cn or self.c_connected or self.chain_c_connected):
            raise ValueError('a non-Oka complement is neither dominable nor C-connected')
        if (self.reason == Reason.NOT_GENERAL_POSITION) != (self.failing_subset is not None):
            raise ValueError('a failing subset is reported exactly when the forms are not in general position')
        return self
