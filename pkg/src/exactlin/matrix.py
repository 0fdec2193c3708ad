from __future__ import annotations as _annotations

from collections.abc import Iterable, Iterator, Sequence
from typing import Any, overload

from pydantic import GetCoreSchemaHandler
from pydantic_core import core_schema
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ..common.errors import DimensionMismatchError
from .scalar import ONE, ZERO, GaussianRational

__all__ = (
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


class VectorQ(Sequence[GaussianRational]):
    """
    Fixed-length immutable vector over Q(i).
    """

    __slots__ = ('_entries',)

    def __init__(self, entries: Iterable[Any]):
        values = tuple(GaussianRational.coerce(e) for e in entries)
        if not values:
            raise DimensionMismatchError('a vector needs at least one entry')
        self._entries = values

    @classmethod
    def zeros(cls, length: int) -> VectorQ:
        return cls([ZERO] * length)

    @classmethod
    def unit(cls, length: int, index: int) -> VectorQ:
        return cls(ONE if i == index else ZERO for i in range(length))

    @overload
    def __getitem__(self, index: int) -> GaussianRational: ...

    @overload
    def __getitem__(self, index: slice) -> VectorQ: ...

    def __getitem__(self, index: int | slice) -> GaussianRational | VectorQ:
        if isinstance(index, slice):
            return VectorQ(self._entries[index])
        return self._entries[index]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[GaussianRational]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VectorQ):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._entries)

    def _check(self, other: VectorQ) -> None:
        if len(other) != len(self):
            raise DimensionMismatchError(f'vector lengths differ: {len(self)} and {len(other)}')

    def __add__(self, other: VectorQ) -> VectorQ:
        self._check(other)
        return VectorQ(a + b for a, b in zip(self, other))

    def __sub__(self, other: VectorQ) -> VectorQ:
        self._check(other)
        return VectorQ(a - b for a, b in zip(self, other))

    def __neg__(self) -> VectorQ:
        return VectorQ(-a for a in self)

    def scale(self, factor: Any) -> VectorQ:
        c = GaussianRational.coerce(factor)
        return VectorQ(c * a for a in self)

    def __mul__(self, factor: Any) -> VectorQ:
        return self.scale(factor)

    __rmul__ = __mul__

    def dot(self, other: Sequence[GaussianRational]) -> GaussianRational:
        """
        Bilinear pairing `Σ a_i b_i`, no conjugation: this is how a linear form is evaluated at a point.
        """
        if len(other) != len(self):
            raise DimensionMismatchError(f'vector lengths differ: {len(self)} and {len(other)}')
        total = ZERO
        for a, b in zip(self, other):
            if a and b:
                total = total + a * b
        return total

    def __matmul__(self, other: MatrixQ) -> VectorQ:
        # row vector times matrix
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if other.nrows != len(self):
            raise DimensionMismatchError(f'cannot multiply a {len(self)}-vector by a {other.shape} matrix')
        return VectorQ(self.dot(col) for col in other.columns())

    @property
    def is_zero(self) -> bool:
        return not any(self._entries)

    def first_nonzero(self) -> int | None:
        return next((i for i, a in enumerate(self._entries) if a), None)

    def normalized(self) -> VectorQ:
        """
        Rescale so the first nonzero entry is 1; the zero vector is returned unchanged.
        """
        idx = self.first_nonzero()
        if idx is None or self._entries[idx] == ONE:
            return self
        return self.scale(self._entries[idx].inverse())

    def to_strings(self) -> list[str]:
        return [str(a) for a in self._entries]

    def __str__(self) -> str:
        return f'({", ".join(self.to_strings())})'

    def __repr__(self) -> str:
        return f'VectorQ({self.to_strings()!r})'

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            lambda v: v if isinstance(v, VectorQ) else cls(v),
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda v: v.to_strings(), when_used='json'
            ),
        )


class MatrixQ:
    """
    Rectangular immutable matrix over Q(i), stored as a tuple of row vectors.

    Products and elimination convert to a sympy `DomainMatrix` over `QQ_I`, see `to_domain_matrix`.
    """

    __slots__ = ('_rows',)

    def __init__(self, rows: Iterable[Iterable[Any]]):
        values = tuple(r if isinstance(r, VectorQ) else VectorQ(r) for r in rows)
        if not values:
            raise DimensionMismatchError('a matrix needs at least one row')
        width = len(values[0])
        if any(len(r) != width for r in values):
            raise DimensionMismatchError('matrix rows have different lengths')
        self._rows = values

    @classmethod
    def identity(cls, size: int) -> MatrixQ:
        return cls(VectorQ.unit(size, i) for i in range(size))

    @property
    def rows(self) -> tuple[VectorQ, ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def columns(self) -> Iterator[VectorQ]:
        for j in range(self.ncols):
            yield VectorQ(r[j] for r in self._rows)

    def transpose(self) -> MatrixQ:
        return MatrixQ(self.columns())

    def __getitem__(self, index: tuple[int, int]) -> GaussianRational:
        i, j = index
        return self._rows[i][j]

    @overload
    def __matmul__(self, other: MatrixQ) -> MatrixQ: ...

    @overload
    def __matmul__(self, other: VectorQ) -> VectorQ: ...

    def __matmul__(self, other: MatrixQ | VectorQ) -> MatrixQ | VectorQ:
        if isinstance(other, VectorQ):
            if len(other) != self.ncols:
                raise DimensionMismatchError(f'cannot multiply a {self.shape} matrix by a {len(other)}-vector')
            return VectorQ(r.dot(other) for r in self._rows)
        elif isinstance(other, MatrixQ):
            if other.nrows != self.ncols:
                raise DimensionMismatchError(f'cannot multiply {self.shape} by {other.shape}')
            return from_domain_matrix(to_domain_matrix(self).matmul(to_domain_matrix(other)))
        return NotImplemented

    @property
    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == MatrixQ.identity(self.nrows)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MatrixQ):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def to_strings(self) -> list[list[str]]:
        return [r.to_strings() for r in self._rows]

    def __str__(self) -> str:
        return '\n'.join(str(r) for r in self._rows)

    def __repr__(self) -> str:
        return f'MatrixQ({self.to_strings()!r})'

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            lambda v: v if isinstance(v, MatrixQ) else cls(v),
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda v: v.to_strings(), when_used='json'
            ),
        )


def to_domain_matrix(m: MatrixQ) -> DomainMatrix:
    return DomainMatrix([[a.element for a in r] for r in m.rows], m.shape, QQ_I)


def from_domain_matrix(dm: DomainMatrix) -> MatrixQ:
    nrows, ncols = dm.shape
    return MatrixQ([GaussianRational.of(dm[i, j].element) for j in range(ncols)] for i in range(nrows))


def row_echelon(m: MatrixQ) -> tuple[MatrixQ, tuple[int, ...]]:
    """
    Reduced row echelon form and pivot columns; zero rows are kept at the bottom.
    """
    reduced, pivots = to_domain_matrix(m).rref()
    return from_domain_matrix(reduced), tuple(pivots)


def rank(m: MatrixQ) -> int:
    return to_domain_matrix(m).rank()


def kernel_basis(m: MatrixQ) -> list[VectorQ]:
    """
    Basis of the right null space `{v : m·v = 0}`, one vector per free column, each with first nonzero entry 1.
    """
    null = to_domain_matrix(m).nullspace()
    if null.shape[0] == 0:
        return []
    return [v.normalized() for v in from_domain_matrix(null).rows if not v.is_zero]


def solve(m: MatrixQ, b: VectorQ) -> VectorQ | None:
    """
    One exact solution of `m·x = b` (free variables set to 0), or `None` when the system is inconsistent.
    """
    if len(b) != m.nrows:
        raise DimensionMismatchError(f'right-hand side has length {len(b)}, expected {m.nrows}')
    augmented = MatrixQ([*r, rhs] for r, rhs in zip(m.rows, b))
    reduced, pivots = row_echelon(augmented)
    if m.ncols in pivots:
        return None
    x = [ZERO] * m.ncols
    for row, piv_c in zip(reduced.rows, pivots):
        x[piv_c] = row[-1]
    return VectorQ(x)


def inverse(m: MatrixQ) -> MatrixQ | None:
    """
    Exact inverse, or `None` for a singular matrix.
    """
    if m.nrows != m.ncols:
        raise DimensionMismatchError(f'only square matrices have inverses, got {m.shape}')
    try:
        return from_domain_matrix(to_domain_matrix(m).inv())
    except DMNonInvertibleMatrixError:
        return None
