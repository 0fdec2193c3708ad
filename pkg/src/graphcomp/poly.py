from __future__ import annotations as _annotations

from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, GetCoreSchemaHandler, ValidationError
from pydantic_core import core_schema
from sympy import QQ_I, Poly, Symbol

from ..common.errors import DimensionMismatchError, DivisionByZeroError, MalformedDocumentError
from ..exactlin import ZERO, GaussianRational

__all__ = 'PolyMap', 'PolyDocument', 'UniPolyQ', 'gcd', 'parse_poly', 'complex_pair'

_X = Symbol('x')


def complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


class PolyDocument(BaseModel):
    variables: int
    # nested dense lists, axis i is the degree in x_i; leaves are numbers or [re, im] pairs
    coefficients: list[Any]


class PolyMap:
    """
    Polynomial in `x_0..x_{n-1}` with complex double coefficients, stored as a dense array where
    `coefficients[i_0, ..., i_{n-1}]` multiplies `x_0^i_0 ... x_{n-1}^i_{n-1}`.
    """

    __slots__ = 'coefficients', '_gradient'

    def __init__(self, coefficients: Any):
        arr = np.array(coefficients, dtype=complex)
        if arr.ndim == 0 or arr.size == 0:
            raise DimensionMismatchError('a polynomial needs at least one variable and one coefficient')
        if not np.all(np.isfinite(arr)):
            raise MalformedDocumentError('polynomial coefficients must be finite')
        arr.setflags(write=False)
        self.coefficients = arr
        self._gradient: tuple[PolyMap, ...] | None = None

    @classmethod
    def constant(cls, value: complex, n: int) -> PolyMap:
        return cls(np.full((1,) * n, value, dtype=complex))

    @classmethod
    def variable(cls, index: int, n: int) -> PolyMap:
        shape = [1] * n
        shape[index] = 2
        arr = np.zeros(shape, dtype=complex)
        arr[tuple(1 if i == index else 0 for i in range(n))] = 1
        return cls(arr)

    @classmethod
    def monomial(cls, coefficient: complex, exponents: Sequence[int]) -> PolyMap:
        arr = np.zeros([e + 1 for e in exponents], dtype=complex)
        arr[tuple(exponents)] = coefficient
        return cls(arr)

    @property
    def n(self) -> int:
        return self.coefficients.ndim

    def __call__(self, x: Sequence[complex] | np.ndarray) -> complex:
        point = np.asarray(x, dtype=complex)
        if point.shape != (self.n,):
            raise DimensionMismatchError(f'point has shape {point.shape}, expected ({self.n},)')
        value: Any = self.coefficients
        for xi in point:
            # polyval with a scalar contracts the leading axis
            value = P.polyval(xi, value)
        return complex(value)

    @property
    def gradient(self) -> tuple[PolyMap, ...]:
        if self._gradient is None:
            self._gradient = tuple(PolyMap(P.polyder(self.coefficients, axis=k)) for k in range(self.n))
        return self._gradient

    def gradient_at(self, x: Sequence[complex] | np.ndarray) -> np.ndarray:
        return np.array([d(x) for d in self.gradient], dtype=complex)

    def derivative(self, x: Sequence[complex] | np.ndarray, direction: Sequence[complex] | np.ndarray) -> complex:
        """
        `g'(x)(s)`, the complex-linear differential at `x` applied to `s`.
        """
        return complex(np.dot(self.gradient_at(x), np.asarray(direction, dtype=complex)))

    def __add__(self, other: PolyMap) -> PolyMap:
        if other.n != self.n:
            raise DimensionMismatchError(f'cannot add polynomials in {self.n} and {other.n} variables')
        shape = tuple(max(a, b) for a, b in zip(self.coefficients.shape, other.coefficients.shape))
        total = np.zeros(shape, dtype=complex)
        total[tuple(slice(0, s) for s in self.coefficients.shape)] += self.coefficients
        total[tuple(slice(0, s) for s in other.coefficients.shape)] += other.coefficients
        return PolyMap(total)

    def __neg__(self) -> PolyMap:
        return PolyMap(-self.coefficients)

    def __sub__(self, other: PolyMap) -> PolyMap:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def to_document(self) -> dict[str, Any]:
        return {'variables': self.n, 'coefficients': _nested_pairs(self.coefficients)}

    def __repr__(self) -> str:
        return f'PolyMap(shape={self.coefficients.shape})'

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            lambda v: v if isinstance(v, cls) else _from_document(PolyDocument.model_validate(v)),
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda v: v.to_document(), when_used='json'
            ),
        )


def _nested_pairs(arr: np.ndarray) -> Any:
    if arr.ndim == 0:
        z = complex(arr)
        return complex_pair(z)
    return [_nested_pairs(a) for a in arr]


def _leaf(value: Any, depth: int) -> Any:
    # a two-element list is a complex pair only at the innermost level
    if depth > 0:
        if not isinstance(value, list):
            raise MalformedDocumentError(f'expected a coefficient list, got {value!r}')
        return [_leaf(v, depth - 1) for v in value]
    match value:
        case bool():
            raise MalformedDocumentError('booleans are not polynomial coefficients')
        case int() | float():
            return complex(value)
        case [int() | float() as re, int() | float() as im] if not isinstance(re, bool) and not isinstance(im, bool):
            return complex(re, im)
        case _:
            raise MalformedDocumentError(f'invalid polynomial coefficient {value!r}')


def _from_document(doc: PolyDocument) -> PolyMap:
    if doc.variables < 1:
        raise MalformedDocumentError(f'a polynomial needs at least one variable, got {doc.variables}')
    try:
        arr = np.array(_leaf(doc.coefficients, doc.variables), dtype=complex)
    except ValueError as exc:
        raise MalformedDocumentError('polynomial coefficient lists must be rectangular') from exc
    if arr.ndim != doc.variables or arr.size == 0:
        raise MalformedDocumentError(f'expected a nonempty {doc.variables}-dimensional coefficient array')
    return PolyMap(arr)


def parse_poly(text: str | bytes) -> PolyMap:
    try:
        doc = PolyDocument.model_validate_json(text)
    except ValidationError as exc:
        raise MalformedDocumentError(f'invalid polynomial document: {exc.error_count()} errors') from exc
    return _from_document(doc)


class UniPolyQ:
    """
    Univariate polynomial over Q(i), backed by a sympy `Poly` with domain `QQ_I`.

    `coefficients` are in ascending degree with trailing zeros stripped; the zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = 'poly', 'coefficients'

    poly: Poly
    coefficients: tuple[GaussianRational, ...]

    def __init__(self, coefficients: Iterable[Any] = ()):
        ascending = [GaussianRational.coerce(c).element for c in coefficients]
        self._set(Poly.from_list(ascending[::-1] or [QQ_I.zero], _X, domain=QQ_I))

    @classmethod
    def of(cls, poly: Poly) -> UniPolyQ:
        obj = object.__new__(cls)
        obj._set(poly)
        return obj

    def _set(self, poly: Poly) -> None:
        coeffs = [] if poly.is_zero else [GaussianRational.of(QQ_I.from_sympy(c)) for c in reversed(poly.all_coeffs())]
        object.__setattr__(self, 'poly', poly)
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    def __setattr__(self, key: str, value: Any) -> None:
        raise AttributeError(f'{type(self).__name__} is immutable')

    @classmethod
    def constant(cls, value: Any) -> UniPolyQ:
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    @property
    def leading(self) -> GaussianRational:
        return self.coefficients[-1] if self.coefficients else ZERO

    def coefficient(self, i: int) -> GaussianRational:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else ZERO

    def __call__(self, x: Any) -> GaussianRational:
        value = ZERO
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __add__(self, other: Any) -> UniPolyQ:
        return UniPolyQ.of(self.poly + _as_poly(other).poly)

    __radd__ = __add__

    def __neg__(self) -> UniPolyQ:
        return UniPolyQ.of(-self.poly)

    def __sub__(self, other: Any) -> UniPolyQ:
        return UniPolyQ.of(self.poly - _as_poly(other).poly)

    def __rsub__(self, other: Any) -> UniPolyQ:
        return _as_poly(other) - self

    def __mul__(self, other: Any) -> UniPolyQ:
        return UniPolyQ.of(self.poly * _as_poly(other).poly)

    __rmul__ = __mul__

    def __divmod__(self, other: Any) -> tuple[UniPolyQ, UniPolyQ]:
        divisor = _as_poly(other)
        if divisor.is_zero:
            raise DivisionByZeroError('polynomial division by zero')
        quotient, remainder = self.poly.div(divisor.poly)
        return UniPolyQ.of(quotient), UniPolyQ.of(remainder)

    def __floordiv__(self, other: Any) -> UniPolyQ:
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> UniPolyQ:
        return divmod(self, other)[1]

    def monic(self) -> UniPolyQ:
        if self.is_zero:
            return self
        return UniPolyQ.of(self.poly.monic())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPolyQ):
            return self.coefficients == other.coefficients
        if isinstance(other, GaussianRational | int):
            return self.coefficients == UniPolyQ.constant(other).coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        terms = []
        for i, c in reversed(list(enumerate(self.coefficients))):
            if not c:
                continue
            monomial = '' if i == 0 else ('x' if i == 1 else f'x^{i}')
            if not monomial:
                terms.append(str(c) if c.is_real else f'({c})')
            elif c == 1:
                terms.append(monomial)
            elif c == -1:
                terms.append(f'-{monomial}')
            else:
                terms.append(f'{c}*{monomial}' if c.is_real else f'({c})*{monomial}')
        return ' + '.join(terms).replace('+ -', '- ')

    def __repr__(self) -> str:
        return f'UniPolyQ({self})'

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            lambda v: v if isinstance(v, cls) else cls(v),
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda v: v.to_strings(), when_used='json'
            ),
        )


def _as_poly(value: Any) -> UniPolyQ:
    return value if isinstance(value, UniPolyQ) else UniPolyQ.constant(value)


def gcd(a: UniPolyQ, b: UniPolyQ) -> UniPolyQ:
    """
    Monic greatest common divisor over `QQ_I`; `gcd(0, 0)` is `0`.
    """
    if a.is_zero and b.is_zero:
        return a
    return UniPolyQ.of(a.poly.gcd(b.poly)).monic()
