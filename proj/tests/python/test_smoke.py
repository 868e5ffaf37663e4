import math

import pytest

import simplexint as si


def test_means_and_moments():
    assert si.means([2, 0, 1]) == [0.5, 1 / 6, 1 / 3]
    assert si.moment([2, 0, 1], [2, 0, 0]) == pytest.approx(2 / 7, rel=1e-14)
    assert si.variances([0, 0, 0])[0] == pytest.approx(1 / 18, rel=1e-14)
    assert si.covariance([2, 0, 1], 0, 1) == pytest.approx(-1 / 84, rel=1e-13)
    assert len(si.std_devs([1, 2, 3])) == 3
    assert len(si.skewnesses([1, 2, 3])) == 3


def test_normalizer_and_special_functions():
    assert si.log_normalizer([1, 1, 1]) == pytest.approx(-math.log(120), rel=1e-15)
    assert si.log_gamma(5.0) == pytest.approx(math.lgamma(5.0), rel=1e-15)
    assert si.log_beta(2.0, 3.0) == pytest.approx(math.log(1 / 12), rel=1e-15)
    assert si.log_factorial(10) == pytest.approx(math.log(3628800), rel=1e-15)


def test_sphere_map_round_trip():
    p = si.angles_to_simplex([math.pi / 4, math.pi / 4])
    assert p == pytest.approx([0.5, 0.25, 0.25], rel=1e-15)
    assert si.simplex_to_angles(p) == pytest.approx([math.pi / 4, math.pi / 4], rel=1e-15)
    assert si.log_jacobian([math.pi / 4, math.pi / 4]) == pytest.approx(math.log(0.5))
    assert math.exp(si.log_kernel(0, [0, 0, 0], math.pi / 4)) == pytest.approx(0.5)


def test_integrate_schemes():
    g = si.integrate([1, 1, 1])
    assert g["value"] == pytest.approx(1 / 120, rel=1e-12)
    assert g["std_error"] == 0.0
    assert si.integrate([0, 0], prior="p1")["value"] == pytest.approx(0.5, rel=1e-12)
    mc = si.integrate([1, 2, 3], scheme="mc", samples=20000, seed=7)
    assert mc == si.integrate([1, 2, 3], scheme="mc", samples=20000, seed=7)
    assert abs(mc["value"] - 12 / 40320) <= 5 * mc["std_error"]
    assert si.integrate_separable([3, 1, 4, 1, 5])["log_value"] == pytest.approx(
        -26.638140165675007, rel=1e-13
    )
    assert si.nested_oracle([2, 3])["value"] == pytest.approx(1 / 60, rel=1e-11)


def test_prior_expression():
    e = si.PriorExpression.parse("p1*p2")
    assert e.required_bins == 2
    assert e.evaluate([0.5, 0.25, 0.25]) == 0.125
    assert si.PriorExpression.parse(str(e)) == e
    assert si.PRIOR_GRAMMAR_VERSION == 1


def test_errors():
    with pytest.raises(si.PriorSyntaxError):
        si.PriorExpression.parse("p1 + * p2")
    with pytest.raises(si.PriorEvaluationError):
        si.PriorExpression.parse("log(p1)").evaluate([0.0, 1.0])
    with pytest.raises(ValueError):
        si.means([1])
    with pytest.raises(si.NumericalError):
        si.integrate([1, 1, 1], nodes=100, budget=10)
    with pytest.raises(ValueError):
        si.integrate([1, 1], scheme="simpson")
