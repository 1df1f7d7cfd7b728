"""Forms: parsing, printing, differential action, coordinate changes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from trisecant.forms import (
    Form,
    LinearChange,
    ParseError,
    apply_diff,
    extend_form,
    format_form,
    infer_nvars,
    monomial_basis,
    parse_form,
    scaled_coefficient,
    substitute_linear,
)

from conftest import dense_forms, invertible_changes


def test_monomial_basis_order():
    assert monomial_basis(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert monomial_basis(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomial_basis(3, 2)[0] == (2, 0, 0)
    assert monomial_basis(3, 2)[-1] == (0, 0, 2)


def test_parse_simple():
    f = parse_form("x0^2*x1 - 3*x1^3 + 1/2*x0*x1^2", 2)
    assert f.degree == 3
    assert f.coeffs[(2, 1)] == 1
    assert f.coeffs[(0, 3)] == -3
    assert f.coeffs[(1, 2)] == Fraction(1, 2)


def test_parse_whitespace_and_leading_minus():
    f = parse_form("  - x0 ^ 2 +  4 * x0 * x1 ", 2)
    assert f.coeffs[(2, 0)] == -1
    assert f.coeffs[(1, 1)] == 4


def test_parse_cancellation():
    f = parse_form("x0^2 - x0^2 + x0*x1", 2)
    assert f.degree == 2
    assert f.coeffs == {(1, 1): Fraction(1)}


def test_parse_repeated_variable_factors():
    f = parse_form("x0*x0*x1", 2)
    assert f.coeffs == {(2, 1): Fraction(1)}


def test_parse_rejects_inhomogeneous():
    with pytest.raises(ParseError):
        parse_form("x0 + x1^2", 2)
    with pytest.raises(ParseError):
        parse_form("2*x0^3 + x0*x1", 2)


def test_parse_rejects_bad_syntax():
    for text in ("", "x", "x0 +", "*x0", "x0^", "2*", "x0 x1", "3/0"):
        with pytest.raises(ParseError):
            parse_form(text, 2)


def test_parse_rejects_out_of_range_index():
    with pytest.raises(ParseError):
        parse_form("x2^2", 2)


def test_infer_nvars():
    assert infer_nvars("x0^4") == 1
    assert infer_nvars("x0^2 + x3*x1") == 4
    assert infer_nvars("42") == 1


def test_format_round_trip_examples():
    for text in ("x0^2*x1", "x0^4 + x1^4 + x2^4", "3/2*x0*x1 - x1^2"):
        nv = max(infer_nvars(text), 2)
        f = parse_form(text, nv)
        assert parse_form(format_form(f), nv) == f
    assert format_form(Form.zero(2, 3)) == "0"


def test_form_validation():
    with pytest.raises(ValueError):
        Form(2, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        Form(2, 2, {(1, 1, 0): 1})
    with pytest.raises(ValueError):
        Form(2, 2, {(-1, 3): 1})


def test_form_arithmetic():
    f = parse_form("x0^2 + x1^2", 2)
    g = parse_form("x0^2 - x1^2", 2)
    assert (f + g) == parse_form("2*x0^2", 2)
    assert (f - f).is_zero()
    assert (2 * f).coeffs[(2, 0)] == 2
    assert (f * g) == parse_form("x0^4 - x1^4", 2)
    with pytest.raises(ValueError):
        f + parse_form("x0^3", 2)


def test_power_of_binomial():
    ell = parse_form("x0 + x1", 2)
    assert ell**3 == parse_form("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3", 2)


def test_apply_diff_monomials():
    f = parse_form("x0^3*x1", 2)
    g = parse_form("x0^2", 2)
    assert apply_diff(g, f) == parse_form("6*x0*x1", 2)
    # full contraction to a constant
    total = apply_diff(parse_form("x0^3*x1", 2), f)
    assert total.degree == 0
    assert total.coeffs[(0, 0)] == 6  # 3! * 1!


def test_apply_diff_kills_disjoint_support():
    f = parse_form("x0^2", 2)
    assert apply_diff(parse_form("x1", 2), f).is_zero()


def test_apply_diff_degree_errors():
    f = parse_form("x0^2", 2)
    with pytest.raises(ValueError):
        apply_diff(parse_form("x0^3", 2), f)
    with pytest.raises(ValueError):
        apply_diff(parse_form("x0", 3), f)


def test_scaled_coefficient():
    f = parse_form("x0^2*x1 + 5*x1^3", 2)
    assert scaled_coefficient(f, (2, 1)) == 2  # 2! * 1!
    assert scaled_coefficient(f, (0, 3)) == 30  # 5 * 3!
    assert scaled_coefficient(f, (1, 2)) == 0


def test_substitute_linear_shear():
    # x0 -> x0, x1 -> x0 + x1
    change = LinearChange(((1, 0), (1, 1)))
    f = parse_form("x0*x1", 2)
    assert substitute_linear(f, change) == parse_form("x0^2 + x0*x1", 2)


def test_substitute_identity():
    f = parse_form("x0^3 - 2*x1^3", 2)
    assert substitute_linear(f, LinearChange.identity(2)) == f


def test_linear_change_rejects_singular():
    with pytest.raises(ValueError):
        LinearChange(((1, 2), (2, 4)))


def test_linear_change_inverse():
    change = LinearChange(((1, 1), (0, 1)))
    assert (change @ change.inverse()).rows == LinearChange.identity(2).rows


def test_extend_form():
    f = parse_form("x0^2", 1)
    g = extend_form(f, 3)
    assert g.nvars == 3
    assert g.coeffs == {(2, 0, 0): Fraction(1)}
    with pytest.raises(ValueError):
        extend_form(g, 2)


@given(dense_forms())
@settings(max_examples=150, deadline=None)
def test_parse_format_round_trip(f):
    assert parse_form(format_form(f), f.nvars) == f or f.is_zero()


@given(dense_forms(degrees=(2, 3), nvars_range=(2, 3)).flatmap(
    lambda f: invertible_changes(f.nvars).flatmap(
        lambda a: invertible_changes(f.nvars).map(lambda b: (f, a, b))
    )
))
@settings(max_examples=60, deadline=None)
def test_substitution_right_action(data):
    f, a, b = data
    step_by_step = substitute_linear(substitute_linear(f, a), b)
    composed = substitute_linear(f, a @ b)
    assert step_by_step == composed


@given(dense_forms(degrees=(3,), nvars_range=(2, 3)))
@settings(max_examples=80, deadline=None)
def test_diff_is_linear(f):
    op = parse_form("x0 + 2*x1", f.nvars)
    left = apply_diff(op, f)
    split = apply_diff(parse_form("x0", f.nvars), f) + 2 * apply_diff(parse_form("x1", f.nvars), f)
    assert left == split
