"""Conormal spaces, smoothness, and orbit classification on the third
secant variety.

At a point f of the third secant variety that is outside the second, the
conormal space of the variety inside degree-d forms is spanned by products of
apolar pieces:

* ``full`` formula, used when the span of f is 3-dimensional and the ambient
  has n >= 3: (f-perp)_1 (f-perp)_(d-1) + (f-perp)_s (f-perp)_(d-s) with
  s = floor(d/2);
* ``middle-only``, used when n = 2 or the span is 2-dimensional: the single
  middle product (the degree-1 apolar piece is then zero or the first product
  is contained in the middle one).

The point is smooth iff the conormal dimension equals the expected
codimension.  Points of border rank exactly 3 with 3-dimensional span fall
into three coordinate-change orbits, told apart by the multiplicity pattern
of the discriminant cubic of the apolar net of conics: three distinct linear
factors (Fermat), a double factor (Unmixed), a triple factor (Mixed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .catalecticant import (
    apolar_piece,
    flattening_rank,
    graded_product,
    restrict_to_span,
)
from .forms import Form, apply_diff, monomial_basis
from .linalg import Subspace, span_dim, subspace_sum
from .secant import expected_codim, in_degenerate_locus, in_sigma2, in_sigma3


class UnsupportedDegreeError(ValueError):
    """The operation is not defined at this degree."""


class InSigmaTwoError(ValueError):
    """The point lies on the second secant variety, where the requested
    quantity is not defined."""


class NotInSigmaThreeError(ValueError):
    """The point is not on the third secant variety."""


class ClassificationError(RuntimeError):
    """The orbit classifier reached a state that the theory rules out."""


class OrbitClass(Enum):
    FERMAT = "Fermat"
    UNMIXED = "Unmixed"
    MIXED = "Mixed"
    DEGENERATE_BINARY = "DegenerateBinary"
    IN_SIGMA2 = "InSigma2"
    NOT_IN_SIGMA3 = "NotInSigma3"


@dataclass(frozen=True)
class SmoothnessReport:
    point: Form
    d: int
    n: int
    conormal_dim: int | None
    expected_codim: int
    formula_used: str | None
    verdict: str


def _guard_point(f: Form) -> tuple[int, int]:
    if f.is_zero():
        raise ValueError("the zero form is not a single well-defined point here")
    n = f.nvars - 1
    if n < 2:
        raise ValueError("ambient projective space must have dimension >= 2")
    return f.degree, n


def conormal_with_formula(f: Form) -> tuple[Subspace, str]:
    """Conormal space of the third secant variety at f, together with which
    formula applied ("full" or "middle-only")."""
    d, n = _guard_point(f)
    if d < 4:
        raise UnsupportedDegreeError("conormal computation needs degree >= 4")
    if not in_sigma3(f):
        raise NotInSigmaThreeError("point is not on the third secant variety")
    if in_sigma2(f):
        raise InSigmaTwoError("conormal of the third secant variety needs a point outside the second")
    s = d // 2
    middle = graded_product(apolar_piece(f, s), apolar_piece(f, d - s))
    if n == 2 or flattening_rank(f, 1) == 2:
        return middle, "middle-only"
    first = graded_product(apolar_piece(f, 1), apolar_piece(f, d - 1))
    return subspace_sum(middle, first), "full"


def conormal_space(f: Form) -> Subspace:
    return conormal_with_formula(f)[0]


def smoothness_at(f: Form) -> SmoothnessReport:
    """Smoothness verdict for the third secant variety at f.

    Verdicts: "smooth" / "singular" for computed conormal dimensions,
    "in-sigma2" and "not-in-sigma3" when the point is out of scope, and
    "d3-classified" for cubics outside the second secant, which are smooth
    points by classification rather than by a conormal computation.
    """
    d, n = _guard_point(f)
    if d < 3:
        raise UnsupportedDegreeError("third secant geometry needs degree >= 3")
    codim = expected_codim(d, n)

    def report(verdict: str, dim: int | None = None, formula: str | None = None) -> SmoothnessReport:
        return SmoothnessReport(
            point=f, d=d, n=n, conormal_dim=dim, expected_codim=codim,
            formula_used=formula, verdict=verdict,
        )

    if not in_sigma3(f):
        return report("not-in-sigma3")
    if in_sigma2(f):
        return report("in-sigma2")
    if d == 3:
        return report("d3-classified")
    space, formula = conormal_with_formula(f)
    return report("smooth" if space.dim == codim else "singular", space.dim, formula)


def in_singular_locus(f: Form) -> bool:
    """Whether f is a singular point of the third secant variety.

    The singular locus is the second secant variety, except in degree 4 with
    n >= 3 where the degenerate locus joins it.  Cubics outside the second
    secant are smooth points by classification.
    """
    d = f.degree
    n = f.nvars - 1
    if d < 3:
        raise UnsupportedDegreeError("third secant geometry needs degree >= 3")
    if n < 2:
        raise ValueError("ambient projective space must have dimension >= 2")
    if not in_sigma3(f):
        raise NotInSigmaThreeError("point is not on the third secant variety")
    if in_sigma2(f):
        return True
    if d == 4 and n >= 3:
        return in_degenerate_locus(f)
    return False


# ---------------------------------------------------------------------------
# Hilbert function of an ideal's graded piece


def hilbert_function(generators, t: int) -> int:
    """Dimension of the degree-t piece of the ideal generated by the given
    forms: the span of all (monomial times generator) of degree t.
    Generators of degree above t contribute nothing."""
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    nv = gens[0].nvars
    if any(g.nvars != nv for g in gens):
        raise ValueError("generators use different numbers of variables")
    if t < 0:
        raise ValueError("degree must be nonnegative")
    from .forms import monomial_index
    from .linalg import Echelon

    index = monomial_index(nv, t)
    ambient = len(index)
    ech = Echelon(ambient)
    for g in gens:
        if g.is_zero() or g.degree > t:
            continue
        for shift in monomial_basis(nv, t - g.degree):
            row = {
                index[tuple(a + b for a, b in zip(shift, expo))]: c
                for expo, c in g.coeffs.items()
            }
            ech.add_sparse(row)
        if ech.rank == ambient:
            break
    return ech.rank


# ---------------------------------------------------------------------------
# orbit classification


def _form_from_vector(row, nvars: int, degree: int) -> Form:
    basis = monomial_basis(nvars, degree)
    return Form(nvars, degree, {e: c for e, c in zip(basis, row) if c})


def _net_discriminant(quadrics: list[Form]) -> Form:
    """Determinant of the symmetric matrix of a*Q0 + b*Q1 + c*Q2 as a cubic
    form in (a, b, c)."""
    mats = []
    for q in quadrics:
        m = [[Fraction(0)] * 3 for _ in range(3)]
        for expo, c in q.coeffs.items():
            support = [i for i, e in enumerate(expo) for _ in range(e)]
            i, j = support
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        mats.append(m)
    unit = lambda t: tuple(1 if s == t else 0 for s in range(3))
    entry = [
        [Form(3, 1, {unit(t): mats[t][i][j] for t in range(3)}) for j in range(3)]
        for i in range(3)
    ]
    det = Form.zero(3, 3)
    for perm, sign in (
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
    ):
        det = det + sign * (entry[0][perm[0]] * entry[1][perm[1]] * entry[2][perm[2]])
    return det


def _restrict_to_line(cubic: Form, p: list[int], q: list[int]) -> Form:
    lines = [Form(2, 1, {(1, 0): p[m], (0, 1): q[m]}) for m in range(3)]
    acc = Form.zero(2, 3)
    for expo, c in cubic.coeffs.items():
        term = Form(2, 0, {(0, 0): c})
        for m, e in enumerate(expo):
            if e:
                term = term * lines[m] ** e
        acc = acc + term
    return acc


def _binary_gcd_degree(f: Form, g: Form, formal_degree: int) -> int:
    """Degree of gcd of two binary forms of the given formal degree, at least
    one nonzero.  Roots at (1:0) are handled through the v-multiplicity."""

    def coeff_list(h: Form) -> list[Fraction]:
        out = [h.coeffs.get((i, formal_degree - i), Fraction(0)) for i in range(formal_degree + 1)]
        while out and not out[-1]:
            out.pop()
        return out

    pf, pg = coeff_list(f), coeff_list(g)
    if not pf and not pg:
        raise ValueError("gcd of two zero forms")
    if not pf:
        return formal_degree
    if not pg:
        return formal_degree
    infinity_part = min(formal_degree - (len(pf) - 1), formal_degree - (len(pg) - 1))

    def poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
        a = list(a)
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, coef in enumerate(b):
                a[i + shift] -= factor * coef
            while a and not a[-1]:
                a.pop()
        return a

    a, b = pf, pg
    while b:
        a, b = b, poly_mod(a, b)
    return infinity_part + len(a) - 1


def _distinct_root_count(cubic: Form) -> int:
    """Number of distinct projective roots of a nonzero binary cubic."""
    bu = apply_diff(Form.variable(2, 0), cubic)
    bv = apply_diff(Form.variable(2, 1), cubic)
    return 3 - _binary_gcd_degree(bu, bv, 2)


_LINE_ATTEMPTS = 8


def classify_orbit(f: Form, *, seed: int = 0) -> OrbitClass:
    """Coordinate-change orbit of a point of border rank <= 3.

    Rank-3 points with full 3-dimensional span are separated by how the
    discriminant cubic of the apolar net of conics factors; its multiplicity
    pattern is read off from root counts of restrictions to random lines.
    Restriction can merge distinct roots but never split them, so the maximum
    count over a few seeded lines is the true one.
    """
    d = f.degree
    n = f.nvars - 1
    if d < 3:
        raise UnsupportedDegreeError("orbit classification needs degree >= 3")
    if n < 2:
        raise ValueError("ambient projective space must have dimension >= 2")
    if not in_sigma3(f):
        return OrbitClass.NOT_IN_SIGMA3
    if in_sigma2(f):
        return OrbitClass.IN_SIGMA2
    if flattening_rank(f, 1) == 2:
        return OrbitClass.DEGENERATE_BINARY

    g, _ = restrict_to_span(f)
    net = apolar_piece(g, 2)
    if net.dim != 3:
        raise ClassificationError(f"apolar net of conics has dimension {net.dim}, expected 3")
    quadrics = [_form_from_vector(row, 3, 2) for row in net.basis.entries]
    disc = _net_discriminant(quadrics)
    if disc.is_zero():
        raise ClassificationError("discriminant cubic of the net vanishes identically")

    partials = [apply_diff(Form.variable(3, i), disc) for i in range(3)]
    if span_dim([p.coefficient_vector() for p in partials]) == 1:
        return OrbitClass.MIXED

    best = 0
    for attempt in range(_LINE_ATTEMPTS):
        rng = random.Random(1_000_003 * seed + 7_919 * attempt + 12_345)
        p = [rng.randint(-10**6, 10**6) for _ in range(3)]
        q = [rng.randint(-10**6, 10**6) for _ in range(3)]
        cross = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
        if not any(cross):
            continue
        restricted = _restrict_to_line(disc, p, q)
        if restricted.is_zero():
            continue
        count = _distinct_root_count(restricted)
        if count == 1:
            # a cube was excluded above, so this line merged everything
            continue
        best = max(best, count)
        if best == 3:
            break
    if best == 0:
        raise ClassificationError("no informative line found for the discriminant cubic")
    return OrbitClass.FERMAT if best == 3 else OrbitClass.UNMIXED


# ---------------------------------------------------------------------------
# canonical representatives and sampling


def _coerce_kind(kind) -> OrbitClass:
    if isinstance(kind, OrbitClass):
        return kind
    text = str(kind).strip().lower().replace("-", "").replace("_", "")
    table = {
        "fermat": OrbitClass.FERMAT,
        "unmixed": OrbitClass.UNMIXED,
        "mixed": OrbitClass.MIXED,
        "degeneratebinary": OrbitClass.DEGENERATE_BINARY,
    }
    if text not in table:
        raise ValueError(f"unknown orbit kind {kind!r}")
    return table[text]


def canonical_form(kind, d: int, n: int, alpha=1, beta=1) -> Form:
    """Canonical representative of an orbit in n+1 variables.

    Fermat: x0^d + x1^d + x2^d.  Unmixed: x0^(d-1) x1 + x2^d.  Mixed:
    x0^(d-2) x1^2 + x0^(d-1) x2.  DegenerateBinary (d >= 4 only):
    x0^d + alpha x1^d + beta (x0+x1)^d with nonzero alpha, beta.
    """
    orbit = _coerce_kind(kind)
    if n < 1:
        raise ValueError("need at least two variables")
    nv = n + 1

    def mono(exponents: dict[int, int]) -> Form:
        expo = tuple(exponents.get(i, 0) for i in range(nv))
        return Form.monomial(nv, expo)

    if orbit is OrbitClass.DEGENERATE_BINARY:
        if d < 4:
            raise UnsupportedDegreeError("degenerate binary forms exist only for degree >= 4")
        a, b = Fraction(alpha), Fraction(beta)
        if not a or not b:
            raise ValueError("alpha and beta must be nonzero")
        x0 = Form.variable(nv, 0)
        x1 = Form.variable(nv, 1)
        return x0**d + a * x1**d + b * (x0 + x1) ** d
    if d < 3:
        raise UnsupportedDegreeError("canonical rank-3 forms need degree >= 3")
    if n < 2:
        raise ValueError(f"{orbit.value} needs at least three variables")
    if orbit is OrbitClass.FERMAT:
        return mono({0: d}) + mono({1: d}) + mono({2: d})
    if orbit is OrbitClass.UNMIXED:
        return mono({0: d - 1, 1: 1}) + mono({2: d})
    if orbit is OrbitClass.MIXED:
        return mono({0: d - 2, 1: 2}) + mono({0: d - 1, 2: 1})
    raise ValueError(f"no canonical representative for {orbit.value}")


def sample_rank_le(r: int, d: int, n: int, seed: int = 0) -> Form:
    """Seeded random sum of r d-th powers of linear forms in n+1 variables:
    a point of the r-th secant variety."""
    if r < 1 or d < 1 or n < 1:
        raise ValueError("need r >= 1, d >= 1, n >= 1")
    rng = random.Random(seed)
    nv = n + 1
    total = Form.zero(nv, d)
    basis1 = monomial_basis(nv, 1)
    for _ in range(r):
        while True:
            coords = [rng.randint(-4, 4) for _ in range(nv)]
            if any(coords):
                break
        numerator = rng.choice([x for x in range(-9, 10) if x])
        weight = Fraction(numerator, rng.randint(1, 4))
        ell = Form(nv, 1, {basis1[i]: coords[i] for i in range(nv) if coords[i]})
        total = total + weight * ell**d
    return total
