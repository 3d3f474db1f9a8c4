from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from stirtool.exact import LambdaPoly, poly_eval, poly_substitute_negated
from stirtool.expectation import (
    BLOCK_SIZE,
    McConfig,
    block_generator,
    degenerate_moment_from_power,
    exact_degenerate_moment,
    exact_power_moment,
    falling_factorial,
    mc_check_theorem22,
    mc_estimate_degenerate_moment,
    sample_S_k,
    sample_S_k_batch,
    theorem22_rhs,
)
from stirtool.stirling import new_stirling1_unsigned_conv, stirling1_unsigned

F = Fraction


def single_moment(j):
    # E[U^j] E[X^j] = 1/(j+1) * j!
    return F(factorial(j), j + 1)


def sum_moment(k, j):
    """E[S_k^j] by binomial convolution of independent summands."""
    if k == 1:
        return single_moment(j)
    return sum(comb(j, i) * single_moment(i) * sum_moment(k - 1, j - i) for i in range(j + 1))


def test_power_moment_examples():
    assert exact_power_moment(1, 1) == F(1, 2)
    assert exact_power_moment(1, 2) == F(2, 3)
    assert exact_power_moment(3, 0) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_power_moment_matches_convolution(k):
    for j in range(9):
        assert exact_power_moment(k, j) == sum_moment(k, j)


def test_adell_lekuona():
    for n in range(1, 11):
        for k in range(1, n + 1):
            assert comb(n, k) * exact_power_moment(k, n - k) == stirling1_unsigned(n, k)


def test_degenerate_moment_examples():
    assert exact_degenerate_moment(1, 0) == LambdaPoly([1])
    assert exact_degenerate_moment(1, 1) == LambdaPoly([F(1, 2)])
    assert exact_degenerate_moment(1, 2) == LambdaPoly([F(2, 3), F(-1, 2)])
    assert degenerate_moment_from_power(1, 2) == LambdaPoly([F(2, 3), F(-1, 2)])
    assert degenerate_moment_from_power(3, 0) == LambdaPoly([1])
    with pytest.raises(ValueError):
        exact_degenerate_moment(1, 5, order=3)


def test_degenerate_moment_oracles_agree():
    for k in range(1, 5):
        for n in range(11):
            assert exact_degenerate_moment(k, n) == degenerate_moment_from_power(k, n)
    assert exact_degenerate_moment(2, 4, order=7) == exact_degenerate_moment(2, 4)


def test_degenerate_moment_pointwise():
    # E[(S_2)_{3,l}] at l = 1/3 through the direct convolution oracle
    lam = F(1, 3)
    # (x)_{3,l} = x^3 - 3 l x^2 + 2 l^2 x
    direct = sum_moment(2, 3) - 3 * lam * sum_moment(2, 2) + 2 * lam**2 * sum_moment(2, 1)
    assert poly_eval(exact_degenerate_moment(2, 3), lam) == direct


def test_theorem22_rhs():
    assert theorem22_rhs(2, 1) == LambdaPoly([1, -1])
    assert theorem22_rhs(3, 1) == LambdaPoly([2, -3, 2])
    with pytest.raises(ValueError):
        theorem22_rhs(2, 3)
    with pytest.raises(ValueError):
        theorem22_rhs(2, 0)


def test_theorem22_identity():
    for n in range(1, 11):
        for k in range(1, n + 1):
            assert theorem22_rhs(n, k) == poly_substitute_negated(new_stirling1_unsigned_conv(n, k))


def test_theorem22_constant_term():
    for n in range(1, 11):
        for k in range(1, n + 1):
            assert theorem22_rhs(n, k).coeff(0) == comb(n, k) * exact_power_moment(k, n - k)


# sampling ------------------------------------------------------------------

def test_sample_is_finite_nonnegative():
    rng = block_generator(1, 0)
    draws = sample_S_k_batch(3, 10_000, rng)
    assert np.all(np.isfinite(draws)) and np.all(draws >= 0)
    assert sample_S_k(2, rng) >= 0


@pytest.mark.parametrize("k,mean", [(1, 0.5), (2, 1.0)])
def test_sample_mean(k, mean):
    s = sample_S_k_batch(k, 10**6, block_generator(123, 0))
    se = s.std(ddof=1) / np.sqrt(s.size)
    assert abs(s.mean() - mean) <= 5 * se


def test_falling_factorial():
    s = np.array([0.0, 1.5, 3.0])
    np.testing.assert_array_equal(falling_factorial(s, 0, 0.5), [1, 1, 1])
    np.testing.assert_allclose(falling_factorial(s, 3, 0.5), s * (s - 0.5) * (s - 1.0))


def test_config_validation():
    for bad in [
        dict(k=0, n=1, lambda_value=0.0, samples=10, seed=1),
        dict(k=1, n=-1, lambda_value=0.0, samples=10, seed=1),
        dict(k=1, n=1, lambda_value=float("nan"), samples=10, seed=1),
        dict(k=1, n=1, lambda_value=0.0, samples=1, seed=1),
        dict(k=1, n=1, lambda_value=0.0, samples=10, seed=-1),
        dict(k=1, n=1, lambda_value=0.0, samples=10, seed=2**64),
        dict(k=1, n=1, lambda_value=0.0, samples=10, seed=1, chunks=0),
    ]:
        with pytest.raises(ValueError):
            McConfig(**bad)


def test_mc_constant_integrand():
    r = mc_estimate_degenerate_moment(McConfig(2, 0, 0.7, 1000, 5))
    assert (r.estimate, r.std_error, r.z_score) == (1.0, 0.0, 0.0)


@pytest.mark.parametrize("k,n,lam", [(1, 1, 0.3), (2, 3, 0.5)])
def test_mc_within_five_sigma(k, n, lam):
    r = mc_estimate_degenerate_moment(McConfig(k, n, lam, 10**6, 42))
    assert r.exact_value == float(poly_eval(exact_degenerate_moment(k, n), F(lam)))
    assert r.std_error > 0
    assert abs(r.z_score) <= 5
    assert r.z_score == (r.estimate - r.exact_value) / r.std_error


def test_mc_determinism_across_chunks():
    samples = 3 * BLOCK_SIZE + 17
    reports = {c: mc_estimate_degenerate_moment(McConfig(2, 4, -0.25, samples, 99, c)) for c in (1, 2, 4, 16)}
    assert len(set(reports.values())) == 1
    assert reports[1].samples_used == samples
    other = mc_estimate_degenerate_moment(McConfig(2, 4, -0.25, samples, 100))
    assert other != reports[1]


@pytest.mark.parametrize(
    "n,k,lam,exact",
    [(2, 1, 0.0, 1.0), (2, 1, 0.5, 0.5), (4, 2, 0.25, 7.1875)],
)
def test_mc_theorem22(n, k, lam, exact):
    r = mc_check_theorem22(n, k, lam, 10**6, 2024)
    assert r.exact_value == exact
    assert abs(r.z_score) <= 5


def test_mc_theorem22_diagonal_is_exact():
    r = mc_check_theorem22(3, 3, 0.4, 100, 1)
    assert r.estimate == 1.0 and r.z_score == 0.0
    with pytest.raises(ValueError):
        mc_check_theorem22(1, 2, 0.1, 100, 1)
