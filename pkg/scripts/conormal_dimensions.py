"""Tabulate conormal-space dimensions against the expected codimension of
the third secant variety.

At a smooth point the two numbers agree.  The essentially binary family
falls short by exactly n - 2 when d = 4, which is the defect that makes
those points singular; for d >= 5 the gap closes again.
"""

import argparse
from dataclasses import dataclass

from trisecant import canonical_form, conormal_with_formula, expected_codim

KINDS = ("fermat", "unmixed", "mixed", "degenerate-binary")


@dataclass(frozen=True)
class TableConfig:
    kind: str = "degenerate-binary"
    d_lo: int = 4
    d_hi: int = 6
    n_lo: int = 2
    n_hi: int = 4


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", choices=KINDS, default="degenerate-binary")
    parser.add_argument("--d-lo", type=int, default=4)
    parser.add_argument("--d-hi", type=int, default=6)
    parser.add_argument("--n-lo", type=int, default=2)
    parser.add_argument("--n-hi", type=int, default=4)
    args = parser.parse_args()
    config = TableConfig(args.kind, args.d_lo, args.d_hi, args.n_lo, args.n_hi)

    print(f"family: {config.kind}")
    header = f"{'d':>3} {'n':>3} {'conormal':>9} {'expected':>9} {'gap':>5}  formula"
    print(header)
    print("-" * len(header))
    for d in range(config.d_lo, config.d_hi + 1):
        for n in range(config.n_lo, config.n_hi + 1):
            f = canonical_form(config.kind, d, n)
            space, formula = conormal_with_formula(f)
            expected = expected_codim(d, n)
            gap = expected - space.dim
            print(f"{d:>3} {n:>3} {space.dim:>9} {expected:>9} {gap:>5}  {formula}")


if __name__ == "__main__":
    main()
