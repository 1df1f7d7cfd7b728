"""Sweep the canonical rank-3 families over a (d, n) grid and print the
smoothness verdict for each cell.

The grid reproduces the headline classification: every cell is smooth
except the essentially binary family at d = 4, n >= 3, and d = 3 cells
are settled by the orbit classification instead of a conormal computation.
"""

import argparse
from dataclasses import dataclass

from trisecant import canonical_form, smoothness_at

KINDS = ("fermat", "unmixed", "mixed", "degenerate-binary")


@dataclass(frozen=True)
class SweepConfig:
    d_lo: int = 3
    d_hi: int = 7
    n_lo: int = 2
    n_hi: int = 4

    def degrees(self) -> range:
        return range(self.d_lo, self.d_hi + 1)

    def dims(self) -> range:
        return range(self.n_lo, self.n_hi + 1)


def sweep(config: SweepConfig) -> list[tuple[int, int, str, str]]:
    rows = []
    for d in config.degrees():
        for n in config.dims():
            for kind in KINDS:
                if kind == "degenerate-binary" and d < 4:
                    continue
                report = smoothness_at(canonical_form(kind, d, n))
                rows.append((d, n, kind, report.verdict))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d-lo", type=int, default=3)
    parser.add_argument("--d-hi", type=int, default=7)
    parser.add_argument("--n-lo", type=int, default=2)
    parser.add_argument("--n-hi", type=int, default=4)
    args = parser.parse_args()
    config = SweepConfig(args.d_lo, args.d_hi, args.n_lo, args.n_hi)

    rows = sweep(config)
    width = max(len(k) for k in KINDS)
    header = f"{'d':>3} {'n':>3}  {'family':<{width}}  verdict"
    print(header)
    print("-" * len(header))
    singular = 0
    for d, n, kind, verdict in rows:
        flag = "  <-- singular" if verdict == "singular" else ""
        if flag:
            singular += 1
        print(f"{d:>3} {n:>3}  {kind:<{width}}  {verdict}{flag}")
    print(f"\n{len(rows)} cells, {singular} singular")


if __name__ == "__main__":
    main()
