"""Truncated formal power series in t.

Coefficients live in any commutative ring that supports ``+ - *`` and
multiplication by :class:`~fractions.Fraction`; in practice that means
``Fraction`` itself or :class:`~stirtool.exact.LambdaPoly`.  Ordinary
coefficients are stored; the ``t^n/n!`` normalisation only appears in
:func:`egf_coeff`.

A series of order ``N`` knows its coefficients of ``t^0 .. t^N``; anything
above is unknown, so binary operations truncate to the smaller order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Callable, Sequence

from .exact import LambdaPoly


class SeriesError(ArithmeticError):
    """Precondition failure in a series operation (valuation, unit, order)."""


def _norm(c):
    return Fraction(c) if isinstance(c, int) else c


def _zero_like(c):
    return c * 0


def _one_like(c):
    return c * 0 + 1


def _unit_inverse(c):
    if isinstance(c, LambdaPoly):
        if not c or not c.is_constant():
            raise SeriesError(f"constant term {c!r} is not a unit")
        return LambdaPoly.const(1 / c.coeffs[0])
    if not c:
        raise SeriesError("constant term is zero")
    return 1 / Fraction(c)


class TruncatedSeries:
    """Immutable ``sum_{n<=order} c_n t^n``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Any], order: int | None = None):
        coeffs = [_norm(c) for c in coeffs]
        if not coeffs:
            raise ValueError("at least one coefficient is needed to fix the ring")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        zero = _zero_like(coeffs[0])
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        else:
            coeffs = coeffs + [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    # construction helpers -------------------------------------------------

    @classmethod
    def from_function(cls, fn: Callable[[int], Any], order: int) -> TruncatedSeries:
        return cls([fn(n) for n in range(order + 1)], order)

    @classmethod
    def constant(cls, c, order: int) -> TruncatedSeries:
        c = _norm(c)
        return cls([c], order)

    @classmethod
    def variable(cls, order: int, ring_one=Fraction(1)) -> TruncatedSeries:
        """The series ``t``."""
        zero = _zero_like(ring_one)
        return cls([zero, ring_one], order) if order >= 1 else cls([zero], order)

    @classmethod
    def from_egf(cls, fn: Callable[[int], Any], order: int) -> TruncatedSeries:
        """Series whose EGF coefficients are ``fn(n)``."""
        return cls([_norm(fn(n)) * Fraction(1, factorial(n)) for n in range(order + 1)], order)

    # basic protocol -------------------------------------------------------

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    @property
    def zero(self):
        return _zero_like(self.coeffs[0])

    @property
    def one(self):
        return _one_like(self.coeffs[0])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def map(self, fn: Callable[[Any], Any]) -> TruncatedSeries:
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([_norm(other) + self.zero], self.order)

    def __add__(self, other):
        g = self._lift(other)
        N = min(self.order, g.order)
        return TruncatedSeries([self.coeffs[i] + g.coeffs[i] for i in range(N + 1)], N)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, LambdaPoly)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            return TruncatedSeries([other * c for c in self.coeffs], self.order)
        return NotImplemented

    def __pow__(self, k: int) -> TruncatedSeries:
        return series_pow(self, k)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(f.order, g.order)``."""
    N = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    out = [f.zero] * (N + 1)
    nz_b = [(j, y) for j, y in enumerate(b[: N + 1]) if y]
    for i in range(N + 1):
        x = a[i]
        if not x:
            continue
        for j, y in nz_b:
            if i + j > N:
                break
            out[i + j] = out[i + j] + x * y
    return TruncatedSeries(out, N)


def series_pow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise ValueError("negative power of a series")
    result = TruncatedSeries.constant(f.one, f.order)
    base = f
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be a unit of the ring."""
    inv0 = _unit_inverse(f.coeffs[0])
    a = f.coeffs
    out = [inv0]
    for n in range(1, f.order + 1):
        acc = f.zero
        for i in range(1, n + 1):
            if a[i]:
                acc = acc + a[i] * out[n - i]
        out.append(-(acc * inv0))
    return TruncatedSeries(out, f.order)


def _require_zero_constant(f: TruncatedSeries, what: str) -> None:
    if f.coeffs[0]:
        raise SeriesError(f"{what} needs a series with zero constant term")


def series_log1p(f: TruncatedSeries) -> TruncatedSeries:
    """``log(1 + f) = sum_{m>=1} (-1)^(m-1) f^m / m``."""
    _require_zero_constant(f, "log1p")
    total = TruncatedSeries.constant(f.zero, f.order)
    power = f
    for m in range(1, f.order + 1):
        term = power * Fraction(1 if m % 2 else -1, m)
        total = total + term
        power = series_mul(power, f)
    return total


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """``exp(f) = sum_{m>=0} f^m / m!``."""
    _require_zero_constant(f, "exp")
    total = TruncatedSeries.constant(f.one, f.order)
    power = TruncatedSeries.constant(f.one, f.order)
    for m in range(1, f.order + 1):
        power = series_mul(power, f) * Fraction(1, m)
        total = total + power
    return total


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))`` by Horner's rule; ``inner`` must have zero constant term."""
    _require_zero_constant(inner, "composition")
    N = min(outer.order, inner.order)
    inner = inner.truncate(N)
    acc = TruncatedSeries.constant(outer.coeffs[N], N)
    for i in range(N - 1, -1, -1):
        acc = series_mul(acc, inner) + outer.coeffs[i]
    return acc


def series_shift_down(f: TruncatedSeries, v: int) -> TruncatedSeries:
    """Divide by ``t^v``; the result has order ``f.order - v``."""
    if v < 0:
        raise ValueError("shift must be nonnegative")
    if v > f.order:
        raise SeriesError(f"cannot shift a series of order {f.order} down by {v}")
    if any(f.coeffs[:v]):
        raise SeriesError(f"series has valuation below {v}")
    return TruncatedSeries(f.coeffs[v:], f.order - v)


def egf_coeff(f: TruncatedSeries, n: int):
    """``n!`` times the ordinary coefficient of ``t^n``."""
    if n < 0:
        raise ValueError("negative index")
    if n > f.order:
        raise SeriesError(f"coefficient {n} requested from a series truncated at {f.order}")
    return f.coeffs[n] * factorial(n)


def egf_coeffs(f: TruncatedSeries) -> list:
    return [egf_coeff(f, n) for n in range(f.order + 1)]

