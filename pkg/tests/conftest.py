"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from trisecant.forms import Form, LinearChange
from trisecant.linalg import MatrixQ, matrix_rank


def form_from_powers(weights, linear_coeffs, d: int, nvars: int) -> Form:
    """Sum of weighted d-th powers of the given linear forms."""
    total = Form.zero(nvars, d)
    for weight, coords in zip(weights, linear_coeffs):
        ell = Form(nvars, 1, {
            tuple(1 if j == i else 0 for j in range(nvars)): c
            for i, c in enumerate(coords) if c
        })
        total = total + Fraction(weight) * ell**d
    return total


small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)

nonzero_int = st.integers(min_value=-5, max_value=5).filter(bool)


@st.composite
def power_sum_forms(draw, max_terms: int = 4, degrees=(3, 4, 5), nvars_range=(2, 4)):
    """Random sums of d-th powers: points of small secant varieties."""
    nvars = draw(st.integers(*nvars_range))
    d = draw(st.sampled_from(degrees))
    r = draw(st.integers(min_value=1, max_value=max_terms))
    weights = draw(st.lists(nonzero_int, min_size=r, max_size=r))
    coeff_lists = draw(
        st.lists(
            st.lists(st.integers(min_value=-3, max_value=3), min_size=nvars, max_size=nvars)
            .filter(lambda cs: any(cs)),
            min_size=r,
            max_size=r,
        )
    )
    return form_from_powers(weights, coeff_lists, d, nvars)


@st.composite
def dense_forms(draw, degrees=(2, 3, 4), nvars_range=(1, 3)):
    """Random sparse-to-dense forms with small rational coefficients."""
    nvars = draw(st.integers(*nvars_range))
    d = draw(st.sampled_from(degrees))
    from trisecant.forms import monomial_basis

    basis = monomial_basis(nvars, d)
    coeffs = draw(
        st.lists(small_fraction, min_size=len(basis), max_size=len(basis))
    )
    return Form(nvars, d, dict(zip(basis, coeffs)))


@st.composite
def invertible_changes(draw, nvars: int):
    """Random invertible small-integer substitutions: a permuted product of
    unit triangular matrices, so invertibility holds by construction."""
    vals = st.integers(min_value=-2, max_value=2)
    lower = [
        [1 if i == j else (draw(vals) if j < i else 0) for j in range(nvars)]
        for i in range(nvars)
    ]
    upper = [
        [draw(st.sampled_from((1, -1))) if i == j else (draw(vals) if j > i else 0) for j in range(nvars)]
        for i in range(nvars)
    ]
    product = MatrixQ.from_rows(lower, nvars) @ MatrixQ.from_rows(upper, nvars)
    order = draw(st.permutations(range(nvars)))
    rows = tuple(product.entries[i] for i in order)
    assert matrix_rank(MatrixQ(rows, nvars)) == nvars
    return LinearChange(rows)


@pytest.fixture
def fermat_quartic() -> Form:
    from trisecant.tangent import canonical_form

    return canonical_form("fermat", 4, 2)
