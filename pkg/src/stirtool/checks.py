"""Named identity checks over ranges of (n, k), used by ``stirtool check``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .exact import ONE, ZERO, LambdaPoly
from .expectation import exact_power_moment, new_stirling1_unsigned_negated, theorem22_rhs
from .render import poly_to_text
from .series import TruncatedSeries, series_compose
from .stirling import (
    Family,
    binomial,
    classical_limit,
    entry,
    entry_gf,
    new_stirling1_generator,
    new_stirling1_signed,
    new_stirling2_conv,
    new_stirling2_generator,
    stirling1_unsigned,
)


@dataclass(frozen=True)
class Failure:
    n: int
    k: int
    expected: str
    actual: str
    detail: str = ""


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_n: int
    passed: bool
    first_failure: Optional[Failure] = None

    def __post_init__(self):
        if self.passed != (self.first_failure is None):
            raise ValueError("passed must hold exactly when there is no failure")

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.name} max_n={self.max_n}"
        f = self.first_failure
        extra = f" [{f.detail}]" if f.detail else ""
        return (
            f"FAIL {self.name} max_n={self.max_n} at n={f.n} k={f.k}{extra}: "
            f"expected {f.expected}, got {f.actual}"
        )


def _fmt(x) -> str:
    if isinstance(x, LambdaPoly):
        return poly_to_text(x)
    return str(x)


# each check yields (n, k, expected, actual, detail); first mismatch wins
Comparison = Iterator[tuple[int, int, object, object, str]]


def _triangle(max_n: int, k_min: int = 0):
    for n in range(k_min, max_n + 1):
        for k in range(k_min, n + 1):
            yield n, k


def _gf_order(max_n: int) -> int:
    # two guard terms beyond the largest extracted coefficient
    return max_n + 2


def _theorem_2_1(max_n: int) -> Comparison:
    order = _gf_order(max_n)
    for n, k in _triangle(max_n):
        yield n, k, entry_gf(Family.NS1U, n, k, order), entry(Family.NS1U, n, k), ""


def _theorem_3_1(max_n: int) -> Comparison:
    order = _gf_order(max_n)
    for n, k in _triangle(max_n):
        yield n, k, entry_gf(Family.NS2, n, k, order), entry(Family.NS2, n, k), ""


def _theorem_2_2(max_n: int) -> Comparison:
    for n, k in _triangle(max_n, 1):
        yield n, k, new_stirling1_unsigned_negated(n, k), theorem22_rhs(n, k), ""


def _gf_vs_conv(max_n: int) -> Comparison:
    order = _gf_order(max_n)
    for fam in Family:
        for n, k in _triangle(max_n):
            yield n, k, entry_gf(fam, n, k, order), entry(fam, n, k), fam.value


def _inversion(max_n: int) -> Comparison:
    A = [[new_stirling1_signed(n, k) for k in range(max_n + 1)] for n in range(max_n + 1)]
    B = [[new_stirling2_conv(n, k) for k in range(max_n + 1)] for n in range(max_n + 1)]
    for n, k in _triangle(max_n):
        delta = ONE if n == k else ZERO
        ba = sum((B[n][m] * A[m][k] for m in range(k, n + 1)), ZERO)
        yield n, k, delta, ba, "second*first"
        ab = sum((A[n][m] * B[m][k] for m in range(k, n + 1)), ZERO)
        yield n, k, delta, ab, "first*second"
    composed = compose_generators(max_n + 1)
    for i, c in enumerate(composed.coeffs):
        yield i, 1, ONE if i == 1 else ZERO, c, "second-kind generator after first-kind generator"


def _limit_lambda0(max_n: int) -> Comparison:
    for fam in (Family.NS1U, Family.NS2, Family.DS1, Family.DS2):
        for n, k in _triangle(max_n):
            p = entry(fam, n, k)
            yield n, k, Fraction(classical_limit(fam, n, k)), p.coeff(0), f"{fam.value} constant term"
            if fam in (Family.NS1U, Family.NS2) and p:
                yield n, k, p.coeff(0), p.coeff(n - k), f"{fam.value} leading coefficient"


def _adell_lekuona(max_n: int) -> Comparison:
    for n, k in _triangle(max_n, 1):
        actual = binomial(n, k) * exact_power_moment(k, n - k)
        yield n, k, Fraction(stirling1_unsigned(n, k)), actual, ""


CHECKS: dict[str, Callable[[int], Comparison]] = {
    "theorem-2-1": _theorem_2_1,
    "theorem-3-1": _theorem_3_1,
    "theorem-2-2": _theorem_2_2,
    "inversion": _inversion,
    "gf-vs-conv": _gf_vs_conv,
    "limit-lambda0": _limit_lambda0,
    "adell-lekuona": _adell_lekuona,
}


def compose_generators(order: int) -> TruncatedSeries:
    """(1/l)(exp(l(e^u - 1)) - 1) evaluated at u = log(1 + (1/l) log(1 + l t)).

    Both generators are built over lambda-polynomials; the result should be t.
    """
    return series_compose(new_stirling2_generator(order), new_stirling1_generator(order))


def run_check(name: str, max_n: int) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    for n, k, expected, actual, detail in CHECKS[name](max_n):
        if expected != actual:
            return CheckResult(name, max_n, False, Failure(n, k, _fmt(expected), _fmt(actual), detail))
    return CheckResult(name, max_n, True)

