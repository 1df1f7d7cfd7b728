"""Membership tests for the small secant varieties of Veronese embeddings.

For a degree-d form f, flattening ranks bound the border rank from below,
and for border rank <= 3 suitable rank conditions are exact:

* first secant (rank-1 forms): first and middle flattening ranks <= 1;
* second secant: rank <= 2 at the first flattening, and also at the second
  when d >= 3;
* third secant, d >= 4: rank <= 3 at the first and the middle (k = floor(d/2))
  flattenings.

For d = 3 the same rank conditions are necessary but not known to be
sufficient, and verdicts carry a caveat instead of a guess.  The degenerate
locus D collects the third-secant points whose span is only 2-dimensional:
binary forms of border rank 3, which exist exactly when d >= 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .catalecticant import flattening_rank
from .forms import Form

D3_CAVEAT = "necessary conditions only for d=3"
ZERO_FORM_CAVEAT = "zero form: member of every secant variety by convention"


def _require_degree(f: Form, minimum: int) -> None:
    if f.degree < minimum:
        raise ValueError(f"membership test needs degree >= {minimum}, got {f.degree}")


def _rank(f: Form, k: int) -> int:
    if f.is_zero():
        return 0
    return flattening_rank(f, k)


def in_sigma1(f: Form) -> bool:
    """Whether f is a power of a linear form (or zero)."""
    _require_degree(f, 2)
    if f.is_zero():
        return True
    d = f.degree
    return _rank(f, 1) <= 1 and _rank(f, d // 2) <= 1


def in_sigma2(f: Form) -> bool:
    """Whether f lies on the second secant variety."""
    _require_degree(f, 2)
    if f.is_zero():
        return True
    d = f.degree
    if _rank(f, 1) > 2:
        return False
    return d < 3 or _rank(f, 2) <= 2


def in_sigma3(f: Form) -> bool:
    """Whether f lies on the third secant variety.

    Exact for d >= 4.  For d = 3 this checks the same rank conditions, which
    are necessary only; callers needing the distinction should consult
    ``membership_verdict`` for the caveat.
    """
    _require_degree(f, 3)
    if f.is_zero():
        return True
    d = f.degree
    return _rank(f, 1) <= 3 and _rank(f, d // 2) <= 3


def in_degenerate_locus(f: Form) -> bool:
    """Whether f is a degenerate third-secant point: a binary-essential form
    of border rank exactly 3.  These exist only for degree >= 4."""
    d = f.degree
    if d < 4:
        raise ValueError("the degenerate locus is defined (and nonempty) only for degree >= 4")
    return _rank(f, 1) <= 2 and _rank(f, d // 2) <= 3 and not in_sigma2(f)


def border_rank_lower_bound(f: Form) -> int:
    """Max flattening rank over all splits: a lower bound for border rank."""
    if f.is_zero():
        raise ValueError("the zero form has no border rank")
    d = f.degree
    if d < 2:
        return 1
    return max(flattening_rank(f, k) for k in range(1, d))


def expected_codim(d: int, n: int) -> int:
    """Expected codimension of the third secant variety of the degree-d
    Veronese of projective n-space: C(d+n, n) - (3n + 3)."""
    if d < 3:
        raise ValueError("third secant variety needs degree >= 3")
    if n < 2:
        raise ValueError("ambient projective space must have dimension >= 2")
    return comb(d + n, n) - 3 * n - 3


@dataclass(frozen=True)
class MembershipVerdict:
    """Joint membership report for the small secant varieties."""

    in_sigma1: bool
    in_sigma2: bool
    in_sigma3: bool
    in_D: bool
    witness_ranks: dict[int, int]
    caveat: str | None = None


def membership_verdict(f: Form) -> MembershipVerdict:
    """All membership flags at once, with the flattening ranks that witnessed
    them.  Needs degree >= 3."""
    _require_degree(f, 3)
    d = f.degree
    splits = sorted({1, 2, d // 2})
    ranks = {k: _rank(f, k) for k in splits}
    mid = ranks[d // 2]
    caveats = []
    if f.is_zero():
        caveats.append(ZERO_FORM_CAVEAT)
    if d == 3:
        caveats.append(D3_CAVEAT)
    s1 = ranks[1] <= 1 and mid <= 1
    s2 = ranks[1] <= 2 and ranks[2] <= 2
    s3 = ranks[1] <= 3 and mid <= 3
    degenerate = d >= 4 and not f.is_zero() and s3 and not s2 and ranks[1] == 2
    return MembershipVerdict(
        in_sigma1=s1,
        in_sigma2=s2,
        in_sigma3=s3,
        in_D=degenerate,
        witness_ranks=ranks,
        caveat="; ".join(caveats) if caveats else None,
    )
