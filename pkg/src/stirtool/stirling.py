"""Stirling-type number families as exact lambda-polynomials.

Every family has a cheap route (recurrence or finite convolution) and an
independent route through generating-function expansion with
:mod:`stirtool.series`.  The two routes share nothing beyond the
coefficient arithmetic, so agreement between them is a meaningful check.

Families:

========  ==========================================================
``S1``    signed Stirling numbers of the first kind
``S1U``   unsigned Stirling numbers of the first kind
``S2``    Stirling numbers of the second kind
``DS1``   degenerate Stirling numbers of the first kind
``DS2``   degenerate Stirling numbers of the second kind
``NS1``   new type degenerate Stirling numbers of the first kind
``NS1U``  unsigned new type degenerate first kind
``NS2``   new type degenerate Stirling numbers of the second kind
========  ==========================================================
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .exact import LAMBDA, ONE, ZERO, LambdaPoly, poly_divexact_lambda
from .series import (
    SeriesError,
    TruncatedSeries,
    egf_coeff,
    series_exp,
    series_log1p,
    series_mul,
)


class Family(str, enum.Enum):
    S1 = "s1"
    S1U = "s1u"
    S2 = "s2"
    DS1 = "ds1"
    DS2 = "ds2"
    NS1 = "ns1"
    NS1U = "ns1u"
    NS2 = "ns2"


# --------------------------------------------------------------------------
# recurrence triangles (memoised, grown on demand)

class _Triangle:
    """Lower-triangular table grown row by row from a step function, under a lock."""

    def __init__(self, step, one=1, zero=0):
        self._rows: list = [[one]]
        self._step = step
        self._zero = zero
        self._lock = threading.Lock()

    def row(self, n: int) -> list:
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(self._rows) <= n:
                self._rows.append(self._step(self._rows[-1], len(self._rows) - 1))
            return self._rows[n]

    def get(self, n: int, k: int):
        if n < 0 or k < 0 or k > n:
            return self._zero
        return self.row(n)[k]


def _s1_step(prev: list[int], n: int) -> list[int]:
    # S1(n+1, k) = S1(n, k-1) - n S1(n, k)
    return [
        (prev[k - 1] if k >= 1 else 0) - (n * prev[k] if k <= n else 0)
        for k in range(n + 2)
    ]


def _s2_step(prev: list[int], n: int) -> list[int]:
    # S2(n+1, k) = k S2(n, k) + S2(n, k-1)
    return [
        (k * prev[k] if k <= n else 0) + (prev[k - 1] if k >= 1 else 0)
        for k in range(n + 2)
    ]


_S1 = _Triangle(_s1_step)
_S2 = _Triangle(_s2_step)


def stirling1_signed(n: int, k: int) -> int:
    return _S1.get(n, k)


def stirling1_unsigned(n: int, k: int) -> int:
    return abs(_S1.get(n, k))


def stirling2(n: int, k: int) -> int:
    return _S2.get(n, k)


# --------------------------------------------------------------------------
# generating-function building blocks

def _falling(n: int) -> LambdaPoly:
    """prod_{i=1}^{n-1} (lambda - i)."""
    return prod((LAMBDA - i for i in range(1, n)), start=ONE)


def _degenerate_unit_falling(n: int) -> LambdaPoly:
    """(1)_{n,lambda} = prod_{i=0}^{n-1} (1 - i lambda)."""
    return prod((ONE - LAMBDA * i for i in range(n)), start=ONE)


@lru_cache(maxsize=None)
def degenerate_log_series(order: int) -> TruncatedSeries:
    """log_lambda(1+t) = ((1+t)^lambda - 1)/lambda, EGF coefficients prod_{i<n}(lambda - i)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries.from_egf(lambda n: _falling(n) if n else ZERO, order)


@lru_cache(maxsize=None)
def degenerate_exp_minus_one(order: int) -> TruncatedSeries:
    """e_lambda(t) - 1 with EGF coefficients (1)_{n,lambda}, n >= 1."""
    return TruncatedSeries.from_egf(
        lambda n: _degenerate_unit_falling(n) if n else ZERO, order
    )


def scaled_log_series(order: int, sign: int) -> TruncatedSeries:
    """(1/lambda) log(1 + sign*lambda*t), ordinary coefficients sign^m lambda^(m-1) (-1)^(m-1)/m."""
    return TruncatedSeries(
        [ZERO]
        + [
            LambdaPoly.monomial(m - 1, Fraction((-1) ** (m - 1) * sign**m, m))
            for m in range(1, order + 1)
        ],
        order,
    )


@lru_cache(maxsize=None)
def _powers_over_factorial(kind: str, order: int) -> tuple[TruncatedSeries, ...]:
    """Cached columns F^k/k! for k = 0..order of one base series F."""
    if kind == "ds1":
        base = degenerate_log_series(order)
    elif kind == "ds2":
        base = degenerate_exp_minus_one(order)
    elif kind == "ns1":
        base = new_stirling1_generator(order)
    elif kind == "ns1u":
        # log(1 / (1 + (1/lambda) log(1 - lambda t)))
        base = -series_log1p(scaled_log_series(order, -1))
    elif kind == "ns2":
        base = new_stirling2_generator(order)
    else:  # pragma: no cover - internal keys only
        raise KeyError(kind)
    cols = [TruncatedSeries.constant(ONE, order)]
    for k in range(1, order + 1):
        cols.append(series_mul(cols[-1], base) * Fraction(1, k))
    return tuple(cols)


def new_stirling1_generator(order: int) -> TruncatedSeries:
    """log(1 + (1/lambda) log(1 + lambda t))."""
    return series_log1p(scaled_log_series(order, +1))


def new_stirling2_generator(order: int) -> TruncatedSeries:
    """(1/lambda)(exp(lambda (e^t - 1)) - 1)."""
    et_minus_one = TruncatedSeries.from_egf(lambda n: ONE if n else ZERO, order)
    h = series_exp(et_minus_one * LAMBDA) - ONE
    return h.map(poly_divexact_lambda)


def _gf_entry(kind: str, n: int, k: int, order: int | None) -> LambdaPoly:
    if order is None:
        order = n
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if order < n:
        raise SeriesError(f"truncation order {order} is below n={n}")
    if k > n:
        return ZERO
    return egf_coeff(_powers_over_factorial(kind, order)[k], n)


# --------------------------------------------------------------------------
# degenerate Stirling numbers

def degenerate_stirling1(n: int, k: int, order: int | None = None) -> LambdaPoly:
    """S_{1,lambda}(n,k) from (1/k!) log_lambda(1+t)^k."""
    return _gf_entry("ds1", n, k, order)


def degenerate_stirling2(n: int, k: int, order: int | None = None) -> LambdaPoly:
    """S_{2,lambda}(n,k) from (1/k!) (e_lambda(t) - 1)^k."""
    return _gf_entry("ds2", n, k, order)


def _ds1_step(prev: list[LambdaPoly], n: int) -> list[LambdaPoly]:
    # S(n+1,k) = S(n,k-1) + (k lambda - n) S(n,k)
    return [
        (prev[k - 1] if k >= 1 else ZERO) + ((LAMBDA * k - n) * prev[k] if k <= n else ZERO)
        for k in range(n + 2)
    ]


def _ds2_step(prev: list[LambdaPoly], n: int) -> list[LambdaPoly]:
    # S(n+1,k) = S(n,k-1) + (k - n lambda) S(n,k)
    return [
        (prev[k - 1] if k >= 1 else ZERO) + ((k - LAMBDA * n) * prev[k] if k <= n else ZERO)
        for k in range(n + 2)
    ]


_DS1 = _Triangle(_ds1_step, ONE, ZERO)
_DS2 = _Triangle(_ds2_step, ONE, ZERO)


def degenerate_stirling1_rec(n: int, k: int) -> LambdaPoly:
    """S_{1,lambda}(n,k) by its three-term recurrence."""
    return _DS1.get(n, k)


def degenerate_stirling2_rec(n: int, k: int) -> LambdaPoly:
    return _DS2.get(n, k)


# --------------------------------------------------------------------------
# new type degenerate Stirling numbers

def new_stirling1_unsigned_conv(n: int, k: int) -> LambdaPoly:
    """sum_{m=k}^{n} lambda^(n-m) [n,m] [m,k] over unsigned classical numbers."""
    if k < 0 or k > n:
        return ZERO
    coeffs = [0] * (n - k + 1)
    for m in range(k, n + 1):
        coeffs[n - m] = stirling1_unsigned(n, m) * stirling1_unsigned(m, k)
    return LambdaPoly(coeffs)


def new_stirling1_unsigned_gf(n: int, k: int, order: int | None = None) -> LambdaPoly:
    return _gf_entry("ns1u", n, k, order)


def new_stirling1_signed(n: int, k: int) -> LambdaPoly:
    p = new_stirling1_unsigned_conv(n, k)
    return -p if (n - k) % 2 else p


def new_stirling1_signed_gf(n: int, k: int, order: int | None = None) -> LambdaPoly:
    return _gf_entry("ns1", n, k, order)


def new_stirling2_conv(n: int, k: int) -> LambdaPoly:
    """sum_{m=k}^{n} lambda^(m-k) {m,k} {n,m}."""
    if k < 0 or k > n:
        return ZERO
    coeffs = [0] * (n - k + 1)
    for m in range(k, n + 1):
        coeffs[m - k] = stirling2(m, k) * stirling2(n, m)
    return LambdaPoly(coeffs)


def new_stirling2_gf(n: int, k: int, order: int | None = None) -> LambdaPoly:
    return _gf_entry("ns2", n, k, order)


# --------------------------------------------------------------------------
# classical numbers through their generating functions (oracle side)

@lru_cache(maxsize=None)
def _classical_columns(which: str, order: int) -> tuple[TruncatedSeries, ...]:
    t = TruncatedSeries.variable(order)
    if which == "s1":
        base = series_log1p(t)
    elif which == "s1u":
        base = -series_log1p(-t)
    else:
        base = TruncatedSeries.from_egf(lambda n: Fraction(1 if n else 0), order)
    cols = [TruncatedSeries.constant(1, order)]
    for k in range(1, order + 1):
        cols.append(series_mul(cols[-1], base) * Fraction(1, k))
    return tuple(cols)


def classical_gf(which: str, n: int, k: int, order: int | None = None) -> Fraction:
    """S1 / S1U / S2 entry read off the generating function (rational, integral)."""
    order = n if order is None else order
    if order < n:
        raise SeriesError(f"truncation order {order} is below n={n}")
    if k > n:
        return Fraction(0)
    return egf_coeff(_classical_columns(which, order)[k], n)


# --------------------------------------------------------------------------
# triangles

_RECURRENCE = {
    Family.S1: lambda n, k: LambdaPoly.const(stirling1_signed(n, k)),
    Family.S1U: lambda n, k: LambdaPoly.const(stirling1_unsigned(n, k)),
    Family.S2: lambda n, k: LambdaPoly.const(stirling2(n, k)),
    Family.DS1: degenerate_stirling1_rec,
    Family.DS2: degenerate_stirling2_rec,
    Family.NS1: new_stirling1_signed,
    Family.NS1U: new_stirling1_unsigned_conv,
    Family.NS2: new_stirling2_conv,
}

_GF = {
    Family.S1: lambda n, k, order: LambdaPoly.const(classical_gf("s1", n, k, order)),
    Family.S1U: lambda n, k, order: LambdaPoly.const(classical_gf("s1u", n, k, order)),
    Family.S2: lambda n, k, order: LambdaPoly.const(classical_gf("s2", n, k, order)),
    Family.DS1: degenerate_stirling1,
    Family.DS2: degenerate_stirling2,
    Family.NS1: new_stirling1_signed_gf,
    Family.NS1U: new_stirling1_unsigned_gf,
    Family.NS2: new_stirling2_gf,
}


def entry(family: Family | str, n: int, k: int) -> LambdaPoly:
    """Single entry by the recurrence/convolution route."""
    return _RECURRENCE[Family(family)](n, k)


def entry_gf(family: Family | str, n: int, k: int, order: int | None = None) -> LambdaPoly:
    """Single entry by generating-function expansion."""
    return _GF[Family(family)](n, k, order)


@dataclass(frozen=True)
class StirlingTriangle:
    family: Family
    max_n: int
    entries: tuple[tuple[LambdaPoly, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> LambdaPoly:
        n, k = nk
        if not (0 <= n <= self.max_n):
            raise IndexError(f"row {n} outside 0..{self.max_n}")
        if k < 0 or k > n:
            return ZERO
        return self.entries[n][k]

    def items(self):
        for n, row in enumerate(self.entries):
            for k, p in enumerate(row):
                yield n, k, p


def build_triangle(family: Family | str, max_n: int) -> StirlingTriangle:
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    family = Family(family)
    fn = _RECURRENCE[family]
    rows = tuple(tuple(fn(n, k) for k in range(n + 1)) for n in range(max_n + 1))
    return StirlingTriangle(family, max_n, rows)


def build_triangle_gf(family: Family | str, max_n: int, order: int | None = None) -> StirlingTriangle:
    family = Family(family)
    order = max_n if order is None else order
    fn = _GF[family]
    rows = tuple(
        tuple(fn(n, k, order) for k in range(n + 1)) for n in range(max_n + 1)
    )
    return StirlingTriangle(family, max_n, rows)


def classical_limit(family: Family | str, n: int, k: int) -> int:
    """Classical number that ``family`` reduces to as lambda -> 0."""
    family = Family(family)
    if family in (Family.NS1U, Family.S1U):
        return stirling1_unsigned(n, k)
    if family in (Family.NS1, Family.DS1, Family.S1):
        return stirling1_signed(n, k)
    return stirling2(n, k)


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


__all__ = [
    "Family",
    "StirlingTriangle",
    "binomial",
    "build_triangle",
    "build_triangle_gf",
    "classical_gf",
    "classical_limit",
    "degenerate_exp_minus_one",
    "degenerate_log_series",
    "degenerate_stirling1",
    "degenerate_stirling1_rec",
    "degenerate_stirling2",
    "degenerate_stirling2_rec",
    "entry",
    "entry_gf",
    "new_stirling1_signed",
    "new_stirling1_generator",
    "new_stirling1_signed_gf",
    "new_stirling1_unsigned_conv",
    "new_stirling1_unsigned_gf",
    "new_stirling2_conv",
    "new_stirling2_generator",
    "new_stirling2_gf",
    "scaled_log_series",
    "stirling1_signed",
    "stirling1_unsigned",
    "stirling2",
]
