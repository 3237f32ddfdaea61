import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muntz_sdk.core import (
    DEFAULT_SCHEME,
    GeneralizedPolynomial,
    Grid,
    Interval,
    QuadratureScheme,
    breakpoints,
    gauss_legendre,
    integrate,
    sup_norm_estimate,
)
from muntz_sdk.errors import InputRejectedError, IntegrationError


@pytest.fixture
def quadratic():
    """Fixture with x - x² on [0, 1]."""
    return GeneralizedPolynomial.from_terms([(1.0, 1.0), (-1.0, 2.0)])


def test_from_terms_canonical_form():
    """Test that terms are sorted, merged and stripped of zero coefficients."""
    p = GeneralizedPolynomial.from_terms([(1.0, 2.0), (2.0, 0.0), (3.0, 2.0), (0.0, 5.0)])
    assert p.exponents == (0.0, 2.0)
    assert p.coefficients == (2.0, 4.0)


def test_cancelling_terms_give_zero_polynomial():
    """Test that terms cancelling exactly leave no terms."""
    p = GeneralizedPolynomial.from_terms([(1.5, 0.5), (-1.5, 0.5)])
    assert p.terms == ()
    assert p(0.3) == 0.0
    assert str(p) == "0"


def test_json_terms_round_trip(quadratic):
    """Test the {c, lambda} JSON form."""
    data = quadratic.to_json_terms()
    assert data == [{"c": 1.0, "lambda": 1.0}, {"c": -1.0, "lambda": 2.0}]
    assert GeneralizedPolynomial.from_json_terms(data) == quadratic


def test_value_at_zero_follows_limit_convention():
    """Test that x^0 is 1 and x^λ is 0 for λ > 0 at the origin."""
    p = GeneralizedPolynomial.from_terms([(2.0, 0.0), (5.0, 0.5), (7.0, 3.0)])
    assert p.eval(0.0) == 2.0
    assert p(np.array([0.0]))[0] == 2.0


def test_negative_exponent_rejected_at_zero():
    """Test that exponents in (-1/2, 0) are valid but cannot be evaluated at 0."""
    p = GeneralizedPolynomial.monomial(-0.25)
    assert p.eval(1.0) == 1.0
    with pytest.raises(InputRejectedError):
        p.eval(0.0)


@pytest.mark.parametrize("exponent", [-0.5, -1.0, math.inf])
def test_invalid_exponent_rejected(exponent):
    """Test that exponents outside L²[0,1] are rejected."""
    with pytest.raises(InputRejectedError):
        GeneralizedPolynomial.monomial(exponent)


def test_domain_below_zero_needs_integer_exponents():
    """Test that only ordinary polynomials live on intervals reaching below 0."""
    GeneralizedPolynomial.from_terms([(1.0, 2.0)], (-1.0, 1.0))
    with pytest.raises(InputRejectedError):
        GeneralizedPolynomial.from_terms([(1.0, 0.5)], (-1.0, 1.0))


def test_evaluation_outside_domain_rejected(quadratic):
    """Test that points outside the domain are rejected."""
    with pytest.raises(InputRejectedError):
        quadratic(1.5)
    with pytest.raises(InputRejectedError):
        quadratic(np.array([0.5, -0.1]))


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=50))
def test_vectorized_matches_scalar(points):
    """Test that array evaluation agrees with point evaluation."""
    quadratic = GeneralizedPolynomial.from_terms([(1.0, 1.0), (-1.0, 2.0)])
    values = quadratic(np.array(points))
    for x, value in zip(points, values):
        assert value == pytest.approx(quadratic.eval(x), abs=1e-15)


@given(st.floats(-10.0, 10.0), st.floats(-10.0, 10.0), st.floats(0.0, 1.0))
def test_eval_is_linear(alpha, beta, x):
    """Test (αp + βr)(x) = αp(x) + βr(x)."""
    p = GeneralizedPolynomial.from_terms([(1.0, 1.0), (-1.0, 2.0)])
    r = GeneralizedPolynomial.from_terms([(1.0, 0.5), (3.0, 3.0)])
    combined = alpha * p + beta * r
    assert combined.eval(x) == pytest.approx(alpha * p.eval(x) + beta * r.eval(x), abs=1e-12)


def test_arithmetic(quadratic):
    """Test sums, differences and products."""
    x = GeneralizedPolynomial.monomial(1.0)
    assert (quadratic - quadratic).terms == ()
    assert (quadratic + x).coefficients == (2.0, -1.0)
    assert (x * x).exponents == (2.0,)
    assert (2 * x).coefficients == (2.0,)
    assert (-x).coefficients == (-1.0,)


def test_mismatched_domains_rejected(quadratic):
    """Test that polynomials on different domains do not combine."""
    other = GeneralizedPolynomial.from_terms([(1.0, 1.0)], (0.0, 2.0))
    with pytest.raises(InputRejectedError):
        quadratic + other


def test_l2_inner_product():
    """Test ⟨x^a, x^b⟩ = 1/(a + b + 1)."""
    x = GeneralizedPolynomial.monomial(1.0)
    root = GeneralizedPolynomial.monomial(0.5)
    assert x.l2_inner(x) == pytest.approx(1.0 / 3.0)
    assert x.l2_inner(root) == pytest.approx(1.0 / 2.5)
    assert x.l2_norm() == pytest.approx(math.sqrt(1.0 / 3.0))


def test_sup_norm_estimate(quadratic):
    """Test the grid sup of x - x², attained at the grid point 1/2."""
    assert sup_norm_estimate(quadratic, Grid.uniform(0.0, 1.0, 101)) == 0.25


def test_sup_norm_grid_outside_domain(quadratic):
    """Test that a grid leaving the domain is rejected."""
    with pytest.raises(InputRejectedError):
        sup_norm_estimate(quadratic, Grid.uniform(0.0, 2.0, 5))


def test_interval_validation():
    """Test that reversed intervals are rejected."""
    assert Interval(lo=-1.0, hi=1.0).contains(0.0)
    with pytest.raises(ValueError):
        Interval(lo=1.0, hi=0.0)


def test_grid_uniform_endpoints():
    """Test that uniform grids hit both endpoints exactly."""
    grid = Grid.uniform(0.0, 1.0, 1001)
    assert grid.count == 1001
    assert grid.lo == 0.0
    assert grid.hi == 1.0
    assert grid.points[500] == 0.5


@pytest.mark.parametrize("lo,hi,count", [(0.0, 1.0, 0), (0.0, 1.0, 1), (1.0, 0.0, 5), (0.5, 0.5, 3)])
def test_grid_uniform_invalid(lo, hi, count):
    """Test that impossible uniform grids are rejected."""
    with pytest.raises(InputRejectedError):
        Grid.uniform(lo, hi, count)


def test_grid_of_requires_increasing_points():
    """Test that explicit grids must be strictly increasing."""
    assert Grid.of([0.0, 0.5, 1.0]).count == 3
    with pytest.raises(InputRejectedError):
        Grid.of([0.0, 0.5, 0.5])
    with pytest.raises(InputRejectedError):
        Grid.of([])


def test_gauss_legendre_weights():
    """Test that the rule integrates polynomials of degree 2n - 1 exactly."""
    nodes, weights = gauss_legendre(8)
    assert weights.sum() == pytest.approx(2.0)
    assert np.dot(weights, nodes**14) == pytest.approx(2.0 / 15.0)
    assert np.all(np.diff(nodes) > 0)


def test_graded_breakpoints():
    """Test that meshes starting at 0 are graded toward 0."""
    cuts = breakpoints(0.0, 1.0, QuadratureScheme(panels=4, grading_ratio=0.5))
    assert cuts.tolist() == [0.0, 0.125, 0.25, 0.5, 1.0]
    uniform = breakpoints(1.0, 2.0, QuadratureScheme(panels=4))
    assert uniform.tolist() == pytest.approx([1.0, 1.25, 1.5, 1.75, 2.0])


@pytest.mark.parametrize("exponent", [0.0, 0.5, 1.0, 3.7, -0.4])
def test_integrate_endpoint_singularities(exponent):
    """Test ∫_0^1 x^λ dx = 1/(λ + 1), including singular endpoint behavior."""
    result = integrate(lambda x: x**exponent, 0.0, 1.0)
    assert result == pytest.approx(1.0 / (exponent + 1.0), rel=1e-10)


def test_integrate_smooth_interval():
    """Test a smooth integrand on an interval away from 0."""
    assert integrate(np.sin, 1.0, 2.0) == pytest.approx(math.cos(1.0) - math.cos(2.0), rel=1e-13)
    assert integrate(np.sin, 1.0, 1.0) == 0.0


def test_integrate_reports_non_finite_sample():
    """Test that a non-finite sample raises with its location."""
    with pytest.raises(IntegrationError) as exc_info:
        integrate(lambda x: np.where(x > 0.5, np.inf, 1.0), 0.0, 1.0, DEFAULT_SCHEME)
    assert exc_info.value.location > 0.5
    assert exc_info.value.details["location"] == exc_info.value.location


def test_integrate_invalid_interval():
    """Test that negative or reversed intervals are rejected."""
    with pytest.raises(InputRejectedError):
        integrate(np.cos, -1.0, 1.0)
    with pytest.raises(InputRejectedError):
        integrate(np.cos, 1.0, 0.5)


@settings(deadline=None)
@given(st.floats(-0.39, 20.0), st.floats(-0.39, 20.0))
def test_integrate_monomial_products(a, b):
    """Test ∫_0^1 x^a·x^b dx = 1/(a + b + 1) across singular and steep integrands."""
    result = integrate(lambda x: x**a * x**b, 0.0, 1.0)
    assert result == pytest.approx(1.0 / (a + b + 1.0), rel=1e-10)


def test_grid_uniform_rejects_collapsing_subnormal_points():
    """Test that a grid whose points round together is rejected rather than raising a validation error."""
    with pytest.raises(InputRejectedError):
        Grid.uniform(-1e-320, 1e-320, 1001)
