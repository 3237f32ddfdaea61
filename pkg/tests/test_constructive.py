import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muntz_sdk.constructive import (
    QnOracle,
    abs_via_muntz,
    product_bound,
    qn_coefficients,
    qn_convergence_report,
    qn_oracle,
)
from muntz_sdk.core import ExponentSequence, Grid, integrate
from muntz_sdk.errors import CertificateError, InputRejectedError
from muntz_sdk.gram import distance_to_span


@pytest.fixture
def unit_grid():
    """Fixture with 1001 uniform points on [0, 1]."""
    return Grid.uniform(0.0, 1.0, 1001)


def test_first_approximant():
    """Test Q_1 = x - x² for q = 1 and λ_1 = 2."""
    approximant = qn_coefficients(1.0, [2.0])
    assert approximant.coefficients == (Fraction(1),)
    assert approximant.bound == 0.5
    assert approximant.polynomial.to_json_terms() == [{"c": 1.0, "lambda": 1.0}, {"c": -1.0, "lambda": 2.0}]
    assert approximant(0.5) == 0.25


def test_coefficient_recurrence():
    """Test a_{2,1} = (λ_2 - q)/(λ_2 - λ_1) and a_{2,2} = 1 - a_{2,1}."""
    approximant = qn_coefficients(1.0, [2.0, 4.0])
    assert approximant.coefficients == (Fraction(3, 2), Fraction(-1, 2))


def test_zeroth_approximant_is_target():
    """Test Q_0 = x^q with bound 1."""
    approximant = qn_coefficients(0.5, [1.0, 2.0], n=0)
    assert approximant.n == 0
    assert approximant.bound == 1.0
    assert approximant(0.25) == 0.5


@pytest.mark.parametrize("q,exponents", [(1.0, [2.0, 4.0, 6.0]), (0.5, [1.0, 3.0, 0.25, 7.0]), (0.0, [0.5, 1.5])])
def test_approximant_vanishes_at_one(q, exponents):
    """Test Q_n(1) = 0 from Σ a_{n,i} = 1."""
    approximant = qn_coefficients(q, exponents)
    assert sum(approximant.coefficients) == 1
    assert approximant.evaluate(1.0) == pytest.approx(0.0, abs=1e-15)


def test_bound_for_even_exponents():
    """Test ∏(1 - 1/(2i)) = C(60, 30)/4^30 for q = 1 and λ_i = 2i, i ≤ 30."""
    approximant = qn_coefficients(1.0, [2.0 * i for i in range(1, 31)])
    assert approximant.bound == pytest.approx(math.comb(60, 30) / 4**30, rel=1e-13)
    assert approximant.bound < 0.17
    assert approximant.magnitude > 1.0


@pytest.mark.parametrize("n", [1, 5, 15, 30])
def test_sup_within_bound(n, unit_grid):
    """Test ‖Q_n‖_∞ ≤ ∏|1 - q/λ_i| on the grid."""
    approximant = qn_coefficients(1.0, [2.0 * i for i in range(1, n + 1)])
    assert approximant.grid_sup(unit_grid) <= approximant.bound + 1e-9


@given(st.floats(0.0, 1.0))
def test_extended_precision_matches_double_for_small_coefficients(x):
    """Test that both evaluation paths agree while Σ|a_i| is small."""
    approximant = qn_coefficients(0.5, [1.0, 2.0, 3.0])
    assert approximant(x) == pytest.approx(approximant.evaluate(x), abs=1e-13)


def test_vectorized_evaluation_shape(unit_grid):
    """Test that array input returns an array of the same shape."""
    approximant = qn_coefficients(1.0, [2.0, 3.0])
    values = approximant(unit_grid.array)
    assert isinstance(values, np.ndarray)
    assert values.shape == (unit_grid.count,)


def test_l2_norm_between_distance_and_bound():
    """Test δ ≤ ‖Q_n‖_2 ≤ ‖Q_n‖_∞ ≤ ∏|1 - q/λ_i|."""
    exponents = [1.0, 2.0, 4.0, 8.0]
    approximant = qn_coefficients(0.5, exponents)
    delta = distance_to_span(0.5, exponents).delta
    assert delta <= approximant.l2_norm() + 1e-15
    assert approximant.l2_norm() <= approximant.bound


def test_dump_uses_float_coefficients():
    """Test the lambdas alias and float coefficients in the dump."""
    data = qn_coefficients(1.0, [2.0]).model_dump(by_alias=True)
    assert data == {"q": 1.0, "lambdas": (2.0,), "coefficients": [1.0], "bound": 0.5}


@pytest.mark.parametrize(
    "q,exponents,n",
    [(1.0, [1.0], None), (1.0, [2.0, 2.0], None), (1.0, [0.0], None), (-1.0, [2.0], None), (1.0, [2.0], 2)],
)
def test_construction_rejects_invalid_input(q, exponents, n):
    """Test λ_i = q, repeated or non-positive exponents, q < 0 and n out of range."""
    with pytest.raises(InputRejectedError):
        qn_coefficients(q, exponents, n)


def test_evaluation_outside_unit_interval():
    """Test that points outside [0, 1] are rejected."""
    approximant = qn_coefficients(1.0, [2.0])
    with pytest.raises(InputRejectedError):
        approximant(1.5)
    with pytest.raises(InputRejectedError):
        approximant.evaluate(-0.1)


def test_product_bound():
    """Test the empty product and a single factor."""
    assert product_bound(1.0, []) == 1.0
    assert product_bound(3.0, [1.0]) == 2.0


def test_convergence_report(unit_grid):
    """Test that every row is within its bound and bounds shrink."""
    rows = qn_convergence_report(1.0, ExponentSequence.affine(scale=2.0), 12, unit_grid)
    assert [row.n for row in rows] == list(range(13))
    assert rows[0].bound == 1.0
    assert rows[1].grid_sup == 0.25
    assert all(row.grid_sup <= row.bound + 1e-9 for row in rows)
    assert all(b.bound < a.bound for a, b in zip(rows, rows[1:]))


def test_convergence_report_rejects_invalid_input(unit_grid):
    """Test q in the sequence, n_max < 0 and grids leaving [0, 1]."""
    with pytest.raises(InputRejectedError):
        qn_convergence_report(2.0, ExponentSequence.affine(scale=2.0), 3, unit_grid)
    with pytest.raises(InputRejectedError):
        qn_convergence_report(1.0, ExponentSequence.affine(scale=2.0), -1, unit_grid)
    with pytest.raises(InputRejectedError):
        qn_convergence_report(1.0, ExponentSequence.affine(scale=2.0), 3, Grid.uniform(0.0, 2.0, 11))


def test_convergence_report_certificate_failure(unit_grid, monkeypatch):
    """Test that a grid sup above the bound raises CertificateError."""
    monkeypatch.setattr("muntz_sdk.constructive.approximant.product_bound", lambda q, exponents: 0.0)
    with pytest.raises(CertificateError) as exc_info:
        qn_convergence_report(1.0, ExponentSequence.affine(scale=2.0), 2, unit_grid)
    assert exc_info.value.details["n"] == 0


@pytest.mark.parametrize(
    "q,exponents",
    [(1.0, [2.0, 4.0, 6.0]), (0.5, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]), (2.0, [0.5, 1.0, 3.0, 5.0])],
)
@pytest.mark.parametrize("x", [0.05, 0.3, 0.77, 1.0])
def test_oracle_agrees_with_coefficients(q, exponents, x):
    """Test the integral recursion against the coefficient recurrence."""
    expected = qn_coefficients(q, exponents).evaluate(x)
    assert qn_oracle(q, exponents, len(exponents), x) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("x", [0.01, 0.2, 0.5, 0.9])
def test_oracle_first_level_matches_core_integrate(x):
    """Test Q_1(x) = (λ - q)·x^λ·∫_x^1 t^{q-1-λ} dt against the shared quadrature."""
    q, exponent = 0.5, 1.5
    direct = (exponent - q) * x**exponent * integrate(lambda t: t ** (q - 1.0 - exponent), x, 1.0)
    assert qn_oracle(q, [exponent], 1, x) == pytest.approx(direct, abs=1e-10)
    assert direct == pytest.approx(x**q - x**exponent, abs=1e-12)


def test_oracle_reuses_meshes():
    """Test that one oracle evaluates many points and memoizes the mesh."""
    oracle = QnOracle(1.0, [2.0, 3.0], 2)
    first = oracle(0.4)
    assert oracle(0.4) == first
    assert len(oracle._levels) == 1
    assert oracle(0.3) == pytest.approx(qn_coefficients(1.0, [2.0, 3.0]).evaluate(0.3), abs=1e-8)


def test_oracle_zeroth_level():
    """Test that depth 0 returns x^q."""
    assert qn_oracle(2.0, [1.0], 0, 0.5) == 0.25


def test_oracle_rejects_invalid_input():
    """Test x outside (0, 1], n out of range and invalid mesh options."""
    with pytest.raises(InputRejectedError):
        qn_oracle(1.0, [2.0], 1, 0.0)
    with pytest.raises(InputRejectedError):
        QnOracle(1.0, [2.0], 2)
    with pytest.raises(InputRejectedError):
        QnOracle(1.0, [2.0], 1, lowest_point=1.0)


@pytest.mark.parametrize("n", [1, 4, 10, 25])
def test_abs_via_muntz_certificate(n):
    """Test the even |t| approximant against ∏(1 - 1/(2i)) on [-1, 1]."""
    approximant = abs_via_muntz(n)
    certificate = approximant.certificate(Grid.uniform(-1.0, 1.0, 1001))
    assert certificate.holds
    assert approximant.bound == pytest.approx(math.comb(2 * n, n) / 4**n, rel=1e-13)


def test_abs_via_muntz_is_even_polynomial():
    """Test t - Q_1(t) = t² and evenness."""
    approximant = abs_via_muntz(1)
    assert approximant.polynomial.to_json_terms() == [{"c": 1.0, "lambda": 2.0}]
    assert approximant(-0.5) == approximant(0.5) == 0.25


def test_abs_via_muntz_rejects_invalid_input():
    """Test n < 1 and points outside [-1, 1]."""
    with pytest.raises(InputRejectedError):
        abs_via_muntz(0)
    with pytest.raises(InputRejectedError):
        abs_via_muntz(2)(1.5)


# q on odd eighths and exponents on quarters keep every pair at least 1/8 apart
separated_exponents = st.tuples(
    st.integers(0, 19).map(lambda m: (2 * m + 1) / 8),
    st.lists(st.integers(1, 40), min_size=1, max_size=6, unique=True).map(lambda ks: [k / 4 for k in ks]),
)


@settings(max_examples=20, deadline=None)
@given(separated_exponents)
def test_oracle_agrees_on_separated_exponents(drawn):
    """Test q in (0, 5) and separated exponents in (0, 10] on 20 interior points."""
    q, exponents = drawn
    points = [k / 21 for k in range(1, 21)]
    approximant = qn_coefficients(q, exponents)
    oracle = QnOracle(q, exponents, len(exponents))
    for x in points:
        assert oracle(x) == pytest.approx(approximant.evaluate(x), abs=1e-6)


def test_bound_does_not_vanish_for_convergent_series(unit_grid):
    """Test that ∏|1 - 2/i²| over i ≥ 2 stays positive."""
    rows = qn_convergence_report(2.0, ExponentSequence.power_family(2, start=2), 40, unit_grid)
    assert all(b.bound < a.bound for a, b in zip(rows, rows[1:]))
    assert rows[-1].bound > 0.1
