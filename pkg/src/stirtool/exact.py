"""Exact rational scalars and dense polynomials in the parameter lambda.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator.  :class:`LambdaPoly` stores
coefficients in ascending powers of lambda and trims trailing zeros after
every operation, so ``==`` is mathematical equality.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

#: degree of the zero polynomial
NEG_INF = float("-inf")

_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat(x: Scalar | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """Apply ``op`` in {add, sub, mul, div} to two rationals."""
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    if op == "div" and b == 0:
        raise ZeroDivisionError("rational division by zero")
    return fn(rat(a), rat(b))


def rat_to_str(x: Scalar) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


class LambdaPoly:
    """Immutable dense polynomial in lambda with rational coefficients.

    >>> p = LambdaPoly([1, 1])
    >>> p * p
    LambdaPoly([1, 2, 1])
    >>> p(-1)
    Fraction(0, 1)
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [rat(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    @classmethod
    def const(cls, a: Scalar) -> LambdaPoly:
        return cls((a,))

    @classmethod
    def monomial(cls, i: int, a: Scalar = 1) -> LambdaPoly:
        if i < 0:
            raise ValueError("negative exponent")
        return cls([0] * i + [a])

    @classmethod
    def _raw(cls, c: tuple[Fraction, ...]) -> LambdaPoly:
        # caller guarantees canonical Fraction tuple
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int | float:
        return len(self._c) - 1 if self._c else NEG_INF

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LambdaPoly):
            return self._c == other._c
        if isinstance(other, (int, _RationalABC)):
            return self._c == LambdaPoly.const(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def __repr__(self) -> str:
        return f"LambdaPoly([{', '.join(rat_to_str(a) for a in self._c)}])"

    def __str__(self) -> str:
        from .render import poly_to_text

        return poly_to_text(self)

    @staticmethod
    def _coerce(other) -> LambdaPoly | None:
        if isinstance(other, LambdaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LambdaPoly.const(other)
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        a, b = self._c, q._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return LambdaPoly(out) if out and not out[-1] else LambdaPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self) -> LambdaPoly:
        return LambdaPoly._raw(tuple(-a for a in self._c))

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LambdaPoly._raw(())
            return LambdaPoly._raw(tuple(a * other for a in self._c))
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return LambdaPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        # leading product of nonzero rationals is nonzero
        return LambdaPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero scalar")
            return LambdaPoly._raw(tuple(a / other for a in self._c))
        return NotImplemented

    def __pow__(self, e: int) -> LambdaPoly:
        if e < 0:
            raise ValueError("negative power")
        result, base = LambdaPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x: Scalar) -> Fraction:
        return poly_eval(self, x)


def poly_arith(p: LambdaPoly, q: LambdaPoly, op: str) -> LambdaPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: LambdaPoly, x: Scalar) -> Fraction:
    """Horner evaluation at a rational point."""
    x = rat(x)
    acc = Fraction(0)
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc


def poly_substitute_negated(p: LambdaPoly) -> LambdaPoly:
    """p(lambda) -> p(-lambda)."""
    return LambdaPoly._raw(tuple(-a if i & 1 else a for i, a in enumerate(p.coeffs)))


def poly_divexact_lambda(p: LambdaPoly) -> LambdaPoly:
    """Return q with lambda * q == p; the constant term of p must vanish."""
    if p.coeff(0):
        raise ArithmeticError(f"{p!r} is not divisible by lambda")
    return LambdaPoly._raw(p.coeffs[1:])


def poly_to_json(p: LambdaPoly) -> list[str]:
    return [rat_to_str(a) for a in p.coeffs]


def poly_from_json(coeffs: Sequence[str]) -> LambdaPoly:
    return LambdaPoly(rat_from_str(s) for s in coeffs)


LAMBDA = LambdaPoly([0, 1])
ONE = LambdaPoly.const(1)
ZERO = LambdaPoly()
