"""Catalecticant flattenings and apolarity.

A degree-d form f in n+1 variables induces, for each 1 <= k <= d-1, a linear
map from degree-(d-k) differential operators to degree-k forms.  Its matrix in
the scaled monomial bases has the Hankel-like rule

    entry(I, J) = (coefficient of x^(I+J) in f) * (I+J)!

for |I| = k (rows) and |J| = d-k (columns), with I! = prod_i I_i!.  Row and
column indices both run over ``monomial_basis`` in graded-lex descending
order.

The kernels of these maps are the graded pieces of the apolar ideal of f
(the operators annihilating f), and their pivot columns cut out the span of
f, the smallest subspace of linear forms in which f can be written.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .forms import Exponent, Form, LinearChange, apply_diff, monomial_basis, monomial_index
from .linalg import (
    Echelon,
    MatrixQ,
    Subspace,
    full_subspace,
    kernel_basis,
    matrix_inverse,
    rref,
)


@dataclass(frozen=True)
class FlatteningMatrix:
    """Matrix of the flattening of a degree-``d`` form at split (d-k, k):
    rows indexed by degree-k monomials, columns by degree-(d-k) monomials."""

    d: int
    k: int
    nvars: int
    row_index: tuple[Exponent, ...]
    col_index: tuple[Exponent, ...]
    matrix: MatrixQ

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def rank(self) -> int:
        return rref(self.matrix).rank


def _scaled_coeffs(f: Form) -> dict[Exponent, Fraction]:
    scaled = {}
    for expo, c in f.coeffs.items():
        mult = 1
        for e in expo:
            mult *= factorial(e)
        scaled[expo] = c * mult
    return scaled


def build_flattening(f: Form, k: int) -> FlatteningMatrix:
    d = f.degree
    if not 1 <= k <= d - 1:
        raise ValueError(f"flattening split k={k} out of range for degree {d}")
    nv = f.nvars
    rows = monomial_basis(nv, k)
    cols = monomial_basis(nv, d - k)
    scaled = _scaled_coeffs(f)
    zero = Fraction(0)
    entries = tuple(
        tuple(scaled.get(tuple(a + b for a, b in zip(i_exp, j_exp)), zero) for j_exp in cols)
        for i_exp in rows
    )
    return FlatteningMatrix(d, k, nv, rows, cols, MatrixQ(entries, len(cols)))


def flattening_rank(f: Form, k: int) -> int:
    return build_flattening(f, k).rank()


def contraction_matrix(f: Form, t: int) -> MatrixQ:
    """Matrix of contraction by degree-t operators, T_t -> S_(d-t), columns
    indexed by degree-t monomials.  Covers the boundary splits t=0 and t=d
    that ``build_flattening`` excludes."""
    d = f.degree
    if not 0 <= t <= d:
        raise ValueError(f"contraction degree t={t} out of range for degree {d}")
    nv = f.nvars
    scaled = _scaled_coeffs(f)
    if t == 0:
        col = tuple((scaled.get(e, Fraction(0)),) for e in monomial_basis(nv, d))
        return MatrixQ(col, 1)
    if t == d:
        row = tuple(scaled.get(e, Fraction(0)) for e in monomial_basis(nv, d))
        return MatrixQ((row,), len(row))
    return build_flattening(f, d - t).matrix


def apolar_piece(f: Form, t: int) -> Subspace:
    """Degree-t piece of the apolar ideal of f: the degree-t operators that
    annihilate f.  For the zero form this is all of T_t."""
    d = f.degree
    if not 0 <= t <= d:
        raise ValueError(f"apolar degree t={t} out of range for degree {d}")
    if f.is_zero():
        return full_subspace(t, f.nvars)
    return kernel_basis(contraction_matrix(f, t), ambient_degree=t, nvars=f.nvars)


class SpanResult(NamedTuple):
    dim: int
    basis: tuple[Form, ...]


def span_of(f: Form) -> SpanResult:
    """The span of f: dimension and a basis of the smallest space of linear
    forms expressing f.

    The span is the image of the first flattening; pivot columns of its
    matrix, scaled to leading coefficient 1, give the basis.
    """
    if f.is_zero():
        raise ValueError("the zero form has no span")
    nv = f.nvars
    units = monomial_basis(nv, 1)
    if f.degree == 1:
        vec = f.coefficient_vector()
        lead = next(c for c in vec if c)
        return SpanResult(1, (Form(nv, 1, {e: c / lead for e, c in f.coeffs.items()}),))
    flat = build_flattening(f, 1)
    res = rref(flat.matrix)
    basis = []
    for j in res.pivot_columns:
        column = [flat.matrix.entries[i][j] for i in range(nv)]
        lead = next(c for c in column if c)
        basis.append(Form(nv, 1, {units[i]: column[i] / lead for i in range(nv) if column[i]}))
    return SpanResult(res.rank, tuple(basis))


def restrict_to_span(f: Form) -> tuple[Form, LinearChange]:
    """Rewrite f in coordinates adapted to its span.

    Returns (g, change) where change is an invertible substitution whose
    first r = dim span rows are the span basis, and g is a degree-d form in
    exactly r variables with f = g(change row 0 . x, ..., change row r-1 . x)
    and first flattening rank r (no superfluous variables).
    """
    if f.is_zero():
        raise ValueError("the zero form has no span")
    nv = f.nvars
    d = f.degree
    span = span_of(f)
    r = span.dim

    rows: list[tuple[Fraction, ...]] = [b.coefficient_vector() for b in span.basis]
    ech = Echelon(nv)
    for row in rows:
        ech.add_dense(row)
    for j in range(nv):
        if len(rows) == nv:
            break
        unit = tuple(Fraction(1 if t == j else 0) for t in range(nv))
        if ech.add_dense(unit):
            rows.append(unit)
    change = LinearChange(tuple(rows))

    # dual basis: columns of the inverse give operators picking out the new
    # coordinates, and iterated contraction reads off the coefficients of g
    inv = matrix_inverse(change.matrix())
    duals = [
        Form(nv, 1, {monomial_basis(nv, 1)[t]: inv.entries[t][j] for t in range(nv)})
        for j in range(r)
    ]
    zero_exp = (0,) * nv
    out: dict[Exponent, Fraction] = {}

    def walk(j: int, current: Form, prefix: tuple[int, ...]) -> None:
        if current.is_zero():
            return
        remaining = d - sum(prefix)
        if j == r - 1:
            g_piece = current
            for _ in range(remaining):
                g_piece = apply_diff(duals[j], g_piece)
            const = g_piece.coeffs.get(zero_exp)
            if const:
                out[prefix + (remaining,)] = const
            return
        cur = current
        for a in range(remaining + 1):
            walk(j + 1, cur, prefix + (a,))
            if a < remaining:
                cur = apply_diff(duals[j], cur)

    walk(0, f, ())
    scaled_down = {}
    for expo, v in out.items():
        mult = 1
        for e in expo:
            mult *= factorial(e)
        scaled_down[expo] = v / mult
    g = Form(r, d, scaled_down)
    if d >= 2 and flattening_rank(g, 1) != r:
        raise ArithmeticError("span restriction produced a degenerate form")
    return g, change


def graded_product(u: Subspace, w: Subspace) -> Subspace:
    """Span of all products of a basis of u with a basis of w, inside the
    degree-(a+b) graded piece."""
    if u.nvars != w.nvars:
        raise ValueError("graded product needs a common variable set")
    nv = u.nvars
    a, b = u.ambient_degree, w.ambient_degree
    target = a + b
    index = monomial_index(nv, target)
    basis_a = monomial_basis(nv, a)
    basis_b = monomial_basis(nv, b)
    ech = Echelon(len(index))
    ambient = len(index)

    def sparse(row: tuple[Fraction, ...], basis: tuple[Exponent, ...]):
        return [(basis[i], c) for i, c in enumerate(row) if c]

    rows_u = [sparse(row, basis_a) for row in u.basis.entries]
    same = u == w
    rows_w = rows_u if same else [sparse(row, basis_b) for row in w.basis.entries]
    for i, ru in enumerate(rows_u):
        start = i if same else 0
        for rw in rows_w[start:]:
            prod: dict[int, Fraction] = {}
            for e1, c1 in ru:
                for e2, c2 in rw:
                    key = index[tuple(x + y for x, y in zip(e1, e2))]
                    prod[key] = prod.get(key, Fraction(0)) + c1 * c2
            ech.add_sparse(prod)
        if ech.rank == ambient:
            break
    return Subspace(target, nv, ech.reduced_matrix())
