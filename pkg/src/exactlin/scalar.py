from __future__ import annotations as _annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Self

from pydantic import GetCoreSchemaHandler
from pydantic_core import core_schema
from sympy import QQ, QQ_I

from ..common.errors import DivisionByZeroError, MalformedScalarError

__all__ = ('GaussianRational', 'ZERO', 'ONE', 'I')


class GaussianRational:
    """
    Exact element `re + im·i` of Q(i), a thin immutable wrapper around a sympy `QQ_I` element.

    The wrapper adds the canonical string form, comparison with plain integers and fractions, and pydantic
    validation; all arithmetic is done by the `QQ_I` domain.
    """

    __slots__ = ('element',)

    element: Any

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        if not isinstance(re, int | Rational) or not isinstance(im, int | Rational):
            raise MalformedScalarError(f'exact parts must be integers or fractions, got {re!r}, {im!r}')
        re, im = Fraction(re), Fraction(im)
        object.__setattr__(self, 'element', QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator)))

    @classmethod
    def of(cls, element: Any) -> GaussianRational:
        """
        Wrap an element of `QQ_I` (or anything the domain converts, like a sympy `Rational`).
        """
        obj = object.__new__(cls)
        object.__setattr__(obj, 'element', element if isinstance(element, QQ_I.dtype) else QQ_I.convert(element))
        return obj

    def __setattr__(self, key: str, value: Any) -> None:
        raise AttributeError(f'{type(self).__name__} is immutable')

    @property
    def re(self) -> Fraction:
        return _fraction(self.element.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.element.y)

    @classmethod
    def coerce(cls, value: Any) -> GaussianRational:
        match value:
            case GaussianRational():
                return value
            case bool():
                raise MalformedScalarError(f'not a scalar: {value!r}')
            case int() | Fraction():
                return cls(value)
            case str():
                return cls.parse(value)
            case _ if isinstance(value, QQ_I.dtype):
                return cls.of(value)
            case _:
                raise MalformedScalarError(f'not an exact scalar: {value!r}')

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """
        Parse `"a/b"`, `"a/b+c/d*i"`, `"c/d*i"`, `"i"`, `"-i"`, `"1+i"` and the like.

        A bare `i` (optionally signed) means magnitude 1, `"*i"` with nothing before the star is rejected.
        """
        s = text.replace(' ', '')
        if not s:
            raise MalformedScalarError('empty scalar')
        try:
            if s.endswith('i'):
                head = s[:-1]
                body = head.removesuffix('*')
                split = _split_index(body)
                re_part, im_part = body[:split], body[split:]
                if im_part in ('', '+', '-'):
                    if body != head:
                        raise ValueError('missing coefficient before *i')
                    im_part += '1'
                return cls(Fraction(re_part) if re_part else 0, Fraction(im_part))
            else:
                return cls(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedScalarError(f'malformed scalar {text!r}') from exc

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def is_real(self) -> bool:
        return not self.element.y

    def conjugate(self) -> GaussianRational:
        return GaussianRational.of(QQ_I(self.element.x, -self.element.y))

    def norm(self) -> Fraction:
        x, y = self.element.x, self.element.y
        return _fraction(x * x + y * y)

    def inverse(self) -> GaussianRational:
        if self.is_zero:
            raise DivisionByZeroError('inverse of zero')
        return GaussianRational.of(QQ_I.one / self.element)

    def __bool__(self) -> bool:
        return bool(self.element)

    def __eq__(self, other: object) -> bool:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return self.element == o.element

    def __hash__(self) -> int:
        return hash(self.re) if self.is_real else hash((self.re, self.im))

    def __neg__(self) -> GaussianRational:
        return GaussianRational.of(-self.element)

    def __pos__(self) -> Self:
        return self

    def __add__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return GaussianRational.of(self.element + o.element)

    __radd__ = __add__

    def __sub__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return GaussianRational.of(self.element - o.element)

    def __rsub__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return GaussianRational.of(o.element - self.element)

    def __mul__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return GaussianRational.of(self.element * o.element)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> GaussianRational:
        if (o := _maybe(other)) is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exp: int) -> GaussianRational:
        if exp < 0:
            return self.inverse() ** -exp
        return GaussianRational.of(self.element**exp)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        re, im = self.re, self.im
        if not im:
            return str(re)
        elif not re:
            return f'{im}*i'
        sign = '+' if im > 0 else '-'
        return f'{re}{sign}{abs(im)}*i'

    def __repr__(self) -> str:
        return f'GaussianRational({str(self)!r})'

    def __reduce__(self):
        return GaussianRational, (self.re, self.im)

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(str, when_used='json'),
        )


def _fraction(q: Any) -> Fraction:
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


def _split_index(body: str) -> int:
    # position of the sign that starts the imaginary term, 0 if there's no real part
    for idx in range(len(body) - 1, 0, -1):
        if body[idx] in '+-' and body[idx - 1] not in 'eE':
            return idx
    return 0


def _maybe(value: Any) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    elif isinstance(value, int | Fraction) and not isinstance(value, bool):
        return GaussianRational(value)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)  # noqa: E741
