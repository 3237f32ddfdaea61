import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from muntz_sdk.core import GeneralizedPolynomial, Grid
from muntz_sdk.errors import CertificateError, InputRejectedError
from muntz_sdk.weierstrass import abs_approximant, lattice_max_min, sqrt_error_certificate, sqrt_iterate
from muntz_sdk.weierstrass.iteration import _certify


@pytest.fixture
def unit_grid():
    """Fixture with 1001 uniform points on [0, 1]."""
    return Grid.uniform(0.0, 1.0, 1001)


def test_first_iterates_exact():
    """Test p_1 = t/2 and p_2 = t - t²/8."""
    assert sqrt_iterate(1).exact_coefficients == (Fraction(0), Fraction(1, 2))
    assert sqrt_iterate(2).exact_coefficients == (Fraction(0), Fraction(1), Fraction(-1, 8))


@pytest.mark.parametrize("n", range(1, 7))
def test_denominator_is_power_of_two(n):
    """Test that p_n has degree 2^(n-1) over the denominator 2^(2^n - 1)."""
    iterate = sqrt_iterate(n)
    assert iterate.denominator_exponent == 2**n - 1
    assert len(iterate.exact_coefficients) == 2 ** (n - 1) + 1


@pytest.mark.parametrize("n", range(0, 6))
def test_error_factorization_exact(n):
    """Test s - p_{n+1}(s²) = (s - p_n(s²))·(1 - (s + p_n(s²))/2) in exact rationals."""
    current, following = sqrt_iterate(n), sqrt_iterate(n + 1)
    points = [Fraction(k, 2 ** (n + 2) + 3) for k in range(2 ** (n + 2) + 4)]
    for s in points:
        p = current.exact_value(s * s)
        assert s - following.exact_value(s * s) == (s - p) * (1 - (s + p) / 2)


@given(st.floats(0.0, 1.0))
def test_pointwise_recursion_matches_coefficients(t):
    """Test that the recursion agrees with the materialized coefficients."""
    iterate = sqrt_iterate(8)
    assert iterate(t) == pytest.approx(iterate.evaluate_coefficients(t), abs=1e-12)


def test_large_n_is_not_materialized():
    """Test that iterates beyond the cutoff only evaluate pointwise."""
    iterate = sqrt_iterate(50)
    assert not iterate.materialized
    assert iterate(1.0) == pytest.approx(1.0, abs=2.0 / 50)
    with pytest.raises(InputRejectedError):
        iterate.exact_coefficients


def test_negative_index_rejected():
    """Test that n < 0 is rejected."""
    with pytest.raises(InputRejectedError):
        sqrt_iterate(-1)


def test_sqrt_certificate_holds(unit_grid):
    """Test that 0 <= √t - p_n(t) <= 2√t/(2 + n√t) on the grid, and the sup is below 2/n."""
    certificate = sqrt_error_certificate(50, unit_grid)
    assert certificate.holds
    assert certificate.analytic_bound == 0.04
    assert 0.0 < certificate.grid_estimate <= 0.04
    assert certificate.violations == []


def test_sqrt_error_decreases_with_n(unit_grid):
    """Test that the grid error is nonincreasing in n."""
    estimates = [sqrt_error_certificate(n, unit_grid).grid_estimate for n in (5, 10, 20, 40, 80)]
    assert all(b <= a for a, b in zip(estimates, estimates[1:]))


def test_sqrt_certificate_dump_shape(unit_grid):
    """Test the report fields; slack and grid stay internal."""
    data = sqrt_error_certificate(3, unit_grid).model_dump()
    assert set(data) == {"n", "analytic_bound", "grid_estimate", "violations"}


def test_sqrt_certificate_rejects_bad_input(unit_grid):
    """Test that n < 1 and grids leaving [0, 1] are rejected."""
    with pytest.raises(InputRejectedError):
        sqrt_error_certificate(0, unit_grid)
    with pytest.raises(InputRejectedError):
        sqrt_error_certificate(5, Grid.uniform(-1.0, 1.0, 11))


def test_certificate_failure_raises(unit_grid):
    """Test that a violated bound raises CertificateError and is recorded otherwise."""
    t = unit_grid.array
    error = np.full_like(t, 0.5)
    pointwise = np.full_like(t, 0.1)
    with pytest.raises(CertificateError):
        _certify(1, t, error, pointwise, 0.1, unit_grid, 0.0, strict=True)
    certificate = _certify(1, t, error, pointwise, 0.1, unit_grid, 0.0, strict=False)
    assert not certificate.holds
    assert len(certificate.violations) == unit_grid.count


@given(st.floats(-2.0, 2.0))
def test_abs_approximant_is_even(t):
    """Test q_n(t) = q_n(-t) exactly."""
    approximant = abs_approximant(2.0, 20)
    assert approximant(t) == approximant(-t)


@pytest.mark.parametrize("a,n", [(1.0, 1), (1.0, 30), (2.5, 10), (0.1, 100)])
def test_abs_certificate_holds(a, n):
    """Test the |t| bound 2a/n on [-a, a]."""
    certificate = abs_approximant(a, n).certificate(Grid.uniform(-a, a, 1001))
    assert certificate.holds
    assert certificate.analytic_bound == pytest.approx(2.0 * a / n)
    assert certificate.grid_estimate <= 2.0 * a / n


def test_abs_polynomial_scaling():
    """Test q_1(t) = t²/(2a)."""
    polynomial = abs_approximant(2.0, 1).polynomial
    assert polynomial.to_json_terms() == [{"c": 0.25, "lambda": 2.0}]
    assert polynomial.domain.lo == -2.0


@given(st.floats(-1.5, 1.5))
def test_abs_polynomial_matches_evaluator(t):
    """Test that materialized coefficients reproduce the recursion."""
    approximant = abs_approximant(1.5, 4)
    assert approximant.polynomial(t) == pytest.approx(approximant(t), abs=1e-12)


def test_abs_rejects_bad_input():
    """Test a ≤ 0, n < 1 and points outside [-a, a]."""
    with pytest.raises(InputRejectedError):
        abs_approximant(0.0, 5)
    with pytest.raises(InputRejectedError):
        abs_approximant(1.0, 0)
    with pytest.raises(InputRejectedError):
        abs_approximant(1.0, 5)(1.5)


@pytest.fixture
def crossing_lines():
    """Fixture with f = x and g = 1 - x on [0, 1]."""
    f = GeneralizedPolynomial.from_terms([(1.0, 1.0)])
    g = GeneralizedPolynomial.from_terms([(1.0, 0.0), (-1.0, 1.0)])
    return f, g


def test_lattice_max_min_within_bound(crossing_lines, unit_grid):
    """Test max/min approximants within a/n, with a = sup |f - g| = 1."""
    f, g = crossing_lines
    approximants = lattice_max_min(f, g, 40)
    assert approximants.a == 1.0
    assert approximants.bound == 1.0 / 40
    certificate = approximants.certificate(unit_grid)
    assert certificate.holds
    assert approximants.maximum(0.0) == pytest.approx(1.0, abs=1.0 / 40)
    assert approximants.minimum(0.5) == pytest.approx(0.5, abs=1.0 / 40)


def test_lattice_converges_like_one_over_n(crossing_lines, unit_grid):
    """Test that the error shrinks when n grows."""
    f, g = crossing_lines
    errors = [lattice_max_min(f, g, n).certificate(unit_grid).grid_estimate for n in (10, 50)]
    assert errors[1] < errors[0]
    assert errors[1] < 0.01


def test_lattice_identical_functions(crossing_lines):
    """Test that f = g needs no |t| approximant."""
    f, _ = crossing_lines
    approximants = lattice_max_min(f, f, 3)
    assert approximants.absolute is None
    assert approximants.maximum(0.3) == approximants.minimum(0.3) == f(0.3)


def test_lattice_agreeing_on_grid_uses_mean():
    """Test that a = 0 on the grid gives (f + g)/2 for both max and min, with bound 0."""
    f = GeneralizedPolynomial.from_terms([(1.0, 1.0)])
    g = GeneralizedPolynomial.from_terms([(1.0, 2.0)])
    grid = Grid.of([0.0, 1.0])
    approximants = lattice_max_min(f, g, 5, grid=grid)
    assert approximants.a == 0.0
    assert approximants.bound == 0.0
    assert approximants.absolute is None
    assert approximants.maximum(0.5) == approximants.minimum(0.5) == 0.375
    assert approximants.certificate(grid).holds


def test_lattice_rejects_invalid_input(crossing_lines):
    """Test non-integer exponents, different domains and n < 1."""
    f, g = crossing_lines
    with pytest.raises(InputRejectedError):
        lattice_max_min(f, GeneralizedPolynomial.monomial(0.5), 5)
    with pytest.raises(InputRejectedError):
        lattice_max_min(f, GeneralizedPolynomial.from_terms([(1.0, 1.0)], (0.0, 2.0)), 5)
    with pytest.raises(InputRejectedError):
        lattice_max_min(f, g, 0)


def test_lattice_on_symmetric_domain():
    """Test max{x², 1/2} on [-1, 1]."""
    f = GeneralizedPolynomial.from_terms([(1.0, 2.0)], (-1.0, 1.0))
    g = GeneralizedPolynomial.from_terms([(0.5, 0.0)], (-1.0, 1.0))
    approximants = lattice_max_min(f, g, 25)
    grid = Grid.uniform(-1.0, 1.0, 1001)
    assert approximants.certificate(grid).holds
    assert approximants.maximum(0.0) == pytest.approx(0.5, abs=approximants.bound)
    assert math.isclose(approximants.a, 0.5)


@pytest.mark.parametrize("n", [2**k for k in range(11)])
def test_sqrt_bound_on_fine_grid(n):
    """Test sup |√t - p_n(t)| ≤ 2/n with no pointwise violations on 10^4 points."""
    certificate = sqrt_error_certificate(n, Grid.uniform(0.0, 1.0, 10**4))
    assert certificate.violations == []
    assert certificate.grid_estimate <= 2.0 / n
