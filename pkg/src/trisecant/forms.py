"""Homogeneous forms over Q and the operations the rest of the library
builds on: parsing, printing, differential operators, and linear changes of
coordinates.

Conventions
-----------
A form of degree d in ``nvars`` variables x0..x{nvars-1} is a sparse map from
exponent tuples to rational coefficients in the *plain* monomial basis: the
coefficient of x^I as literally written.  Forms are immutable and always
canonical (zero coefficients dropped), so structural equality is equality of
polynomials.

The same type doubles as a differential operator: a degree-e form g acts on a
degree-d form f by ``apply_diff(g, f)``, substituting x_i -> d/dx_i in g.  On
monomials, x^J acting on x^I gives prod_i I_i!/(I_i-J_i)! times x^(I-J).

Monomials of a fixed degree are ordered graded-lexicographically descending;
``monomial_basis`` fixes the coordinates used for all matrices and subspaces
downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, perm
from typing import Iterator, Mapping, Sequence, Union

from .linalg import MatrixQ, matrix_inverse, matrix_rank

Exponent = tuple[int, ...]
ScalarLike = Union[int, Fraction]


class ParseError(ValueError):
    """Syntax or content error in polynomial text, with a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple[Exponent, ...]:
    """All exponent tuples of the given total degree, graded-lex descending:
    the power of x0 decreases first, then x1, and so on."""
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomial_basis(nvars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomial_basis(nvars, degree))}


def _unit(nvars: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(nvars))


@dataclass(frozen=True)
class Form:
    """Immutable homogeneous polynomial with exact rational coefficients."""

    nvars: int
    degree: int
    coeffs: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("a form needs at least one variable")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        canonical: dict[Exponent, Fraction] = {}
        for expo, c in self.coeffs.items():
            value = c if isinstance(c, Fraction) else Fraction(c)
            if not value:
                continue
            if len(expo) != self.nvars:
                raise ValueError(f"exponent {expo} has wrong length for {self.nvars} variables")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            if sum(expo) != self.degree:
                raise ValueError(
                    f"monomial {expo} has degree {sum(expo)}, form is declared degree {self.degree}"
                )
            canonical[tuple(expo)] = value
        object.__setattr__(self, "coeffs", canonical)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int, degree: int) -> "Form":
        return Form(nvars, degree, {})

    @staticmethod
    def monomial(nvars: int, exponent: Sequence[int], coeff: ScalarLike = 1) -> "Form":
        expo = tuple(exponent)
        return Form(nvars, sum(expo), {expo: Fraction(coeff)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Form":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        return Form(nvars, 1, {_unit(nvars, i): Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in graded-lex descending order."""
        for expo in sorted(self.coeffs, reverse=True):
            yield expo, self.coeffs[expo]

    def coefficient_vector(self) -> tuple[Fraction, ...]:
        """Plain coefficients over ``monomial_basis(nvars, degree)``."""
        return tuple(self.coeffs.get(e, Fraction(0)) for e in monomial_basis(self.nvars, self.degree))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "Form") -> None:
        if self.nvars != other.nvars:
            raise ValueError("forms in different numbers of variables")
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degrees is not homogeneous")

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            out[expo] = out.get(expo, Fraction(0)) + c
        return Form(self.nvars, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.nvars, self.degree, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: Union["Form", ScalarLike]) -> "Form":
        if isinstance(other, Form):
            if self.nvars != other.nvars:
                raise ValueError("forms in different numbers of variables")
            out: dict[Exponent, Fraction] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = out.get(key, Fraction(0)) + c1 * c2
            return Form(self.nvars, self.degree + other.degree, out)
        scale = Fraction(other)
        return Form(self.nvars, self.degree, {e: c * scale for e, c in self.coeffs.items()})

    def __rmul__(self, other: ScalarLike) -> "Form":
        return self * other

    def __pow__(self, exponent: int) -> "Form":
        if exponent < 0:
            raise ValueError("negative power of a form")
        result = Form(self.nvars, 0, {(0,) * self.nvars: Fraction(1)})
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self) -> str:
        return format_form(self)


def extend_form(f: Form, nvars: int) -> Form:
    """Reinterpret ``f`` in a larger variable set, padding exponents with
    zeros on the right."""
    if nvars < f.nvars:
        raise ValueError("cannot shrink the variable set")
    if nvars == f.nvars:
        return f
    pad = (0,) * (nvars - f.nvars)
    return Form(nvars, f.degree, {e + pad: c for e, c in f.coeffs.items()})


# ---------------------------------------------------------------------------
# parsing and printing
#
#   form   := ['-'] term (('+'|'-') term)*
#   term   := coeff | coeff '*' mono | mono
#   mono   := factor ('*' factor)*
#   factor := 'x' INT ['^' INT]
#   coeff  := INT ['/' INT]


def infer_nvars(text: str) -> int:
    """Smallest variable count covering every index mentioned in ``text``:
    max index + 1, or 1 when no variable appears."""
    best = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] == "x":
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            k = j
            while k < n and text[k].isdigit():
                k += 1
            if k > j:
                best = max(best, int(text[j:k]) + 1)
            i = k
        else:
            i += 1
    return max(best, 1)


def parse_form(text: str, nvars: int) -> Form:
    """Parse polynomial text into a ``Form``.

    Raises ParseError on bad syntax, variable indices >= nvars, or
    inhomogeneous input; whitespace is insignificant.
    """
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    s = text
    n = len(s)
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected an integer", start)
        return int(s[start:pos])

    def read_factor(expo: list[int]) -> None:
        nonlocal pos
        mark = pos
        if pos >= n or s[pos] != "x":
            raise ParseError("expected a variable like x0", mark)
        pos += 1
        skip_ws()
        index = read_int()
        if index >= nvars:
            raise ParseError(f"variable index {index} out of range for {nvars} variables", mark)
        power = 1
        skip_ws()
        if pos < n and s[pos] == "^":
            pos += 1
            skip_ws()
            power = read_int()
        expo[index] += power

    def read_mono() -> Exponent:
        expo = [0] * nvars
        read_factor(expo)
        while True:
            skip_ws()
            if pos < n and s[pos] == "*":
                save = pos
                advance()
                skip_ws()
                if pos < n and s[pos] == "x":
                    read_factor(expo)
                else:
                    raise ParseError("expected a variable after '*'", save)
            else:
                return tuple(expo)

    def advance() -> None:
        nonlocal pos
        pos += 1

    acc: dict[Exponent, Fraction] = {}
    term_degrees: list[tuple[int, int]] = []

    skip_ws()
    if pos >= n:
        raise ParseError("empty input", pos)
    sign = 1
    if s[pos] == "-":
        sign = -1
        advance()
    while True:
        skip_ws()
        term_start = pos
        if pos < n and s[pos].isdigit():
            num = read_int()
            den = 1
            skip_ws()
            if pos < n and s[pos] == "/":
                advance()
                skip_ws()
                den_start = pos
                den = read_int()
                if den == 0:
                    raise ParseError("zero denominator", den_start)
            coeff = Fraction(num, den)
            skip_ws()
            if pos < n and s[pos] == "*":
                advance()
                skip_ws()
                expo = read_mono()
            else:
                expo = (0,) * nvars
        elif pos < n and s[pos] == "x":
            coeff = Fraction(1)
            expo = read_mono()
        else:
            raise ParseError("expected a term", pos)
        acc[expo] = acc.get(expo, Fraction(0)) + sign * coeff
        term_degrees.append((sum(expo), term_start))
        skip_ws()
        if pos >= n:
            break
        if s[pos] == "+":
            sign = 1
        elif s[pos] == "-":
            sign = -1
        else:
            raise ParseError(f"unexpected character {s[pos]!r}", pos)
        advance()

    degrees = {d for d, _ in term_degrees}
    if len(degrees) > 1:
        common = term_degrees[0][0]
        bad = next(p for d, p in term_degrees if d != common)
        raise ParseError("inhomogeneous input: terms of different degrees", bad)
    return Form(nvars, term_degrees[0][0], acc)


def format_form(f: Form) -> str:
    """Canonical text for ``f``: terms in graded-lex descending order, in the
    same grammar ``parse_form`` accepts."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for expo, c in f.terms():
        mono = "*".join(
            f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(expo) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# differential action and coordinate changes


def apply_diff(g: Form, f: Form) -> Form:
    """Apply ``g``, read as a constant-coefficient differential operator, to
    ``f``.  The result is homogeneous of degree deg f - deg g."""
    if g.nvars != f.nvars:
        raise ValueError("operator and form use different numbers of variables")
    if g.degree > f.degree:
        raise ValueError("operator degree exceeds form degree")
    out: dict[Exponent, Fraction] = {}
    for expj, gc in g.coeffs.items():
        for expi, fc in f.coeffs.items():
            if any(j > i for j, i in zip(expj, expi)):
                continue
            mult = 1
            for i, j in zip(expi, expj):
                if j:
                    mult *= perm(i, j)
            key = tuple(i - j for i, j in zip(expi, expj))
            out[key] = out.get(key, Fraction(0)) + gc * fc * mult
    return Form(f.nvars, f.degree - g.degree, out)


def scaled_coefficient(f: Form, exponent: Sequence[int]) -> Fraction:
    """Coefficient of x^I in the scaled basis x^I/I!: the plain coefficient
    times I!.  These are the entries of every catalecticant matrix."""
    expo = tuple(exponent)
    if len(expo) != f.nvars:
        raise ValueError("exponent length does not match the form")
    if sum(expo) != f.degree:
        raise ValueError("exponent degree does not match the form")
    c = f.coeffs.get(expo)
    if not c:
        return Fraction(0)
    mult = 1
    for e in expo:
        mult *= factorial(e)
    return c * mult


@dataclass(frozen=True)
class LinearChange:
    """Invertible linear substitution x_i -> sum_j rows[i][j] * x_j."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.rows)
        if m == 0:
            raise ValueError("empty substitution")
        converted = tuple(
            tuple(c if isinstance(c, Fraction) else Fraction(c) for c in row) for row in self.rows
        )
        if any(len(row) != m for row in converted):
            raise ValueError("substitution matrix must be square")
        object.__setattr__(self, "rows", converted)
        if matrix_rank(MatrixQ(converted, m)) != m:
            raise ValueError("substitution matrix is singular")

    @property
    def nvars(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(nvars: int) -> "LinearChange":
        return LinearChange(tuple(tuple(Fraction(1 if i == j else 0) for j in range(nvars)) for i in range(nvars)))

    @staticmethod
    def from_matrix(m: MatrixQ) -> "LinearChange":
        return LinearChange(m.entries)

    def matrix(self) -> MatrixQ:
        return MatrixQ(self.rows, self.nvars)

    def inverse(self) -> "LinearChange":
        return LinearChange.from_matrix(matrix_inverse(self.matrix()))

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        if self.nvars != other.nvars:
            raise ValueError("composing substitutions of different sizes")
        return LinearChange.from_matrix(self.matrix() @ other.matrix())


def substitute_linear(f: Form, change: LinearChange) -> Form:
    """The form f(A x), where row i of the substitution gives the image of
    x_i.  Right action: substituting by A then by B equals substituting by
    A @ B once."""
    if change.nvars != f.nvars:
        raise ValueError("substitution size does not match the form")
    nv = f.nvars
    images = [
        Form(nv, 1, {_unit(nv, j): change.rows[i][j] for j in range(nv)})
        for i in range(nv)
    ]
    power_cache: dict[tuple[int, int], Form] = {}

    def image_power(i: int, e: int) -> Form:
        key = (i, e)
        got = power_cache.get(key)
        if got is None:
            got = images[i] ** e
            power_cache[key] = got
        return got

    acc: dict[Exponent, Fraction] = {}
    for expo, c in f.coeffs.items():
        term: Form | None = None
        for i, e in enumerate(expo):
            if not e:
                continue
            p = image_power(i, e)
            term = p if term is None else term * p
        if term is None:
            term = Form(nv, 0, {(0,) * nv: Fraction(1)})
        for key, v in term.coeffs.items():
            acc[key] = acc.get(key, Fraction(0)) + c * v
    return Form(nv, f.degree, acc)
