"""Tabulate one-way vs two-way arc counts over a sweep of fleet sizes.

For each n the table lists the arcs a one-way design needs, the arcs a
two-way design spends (both directions on a minimally rigid graph), and
the relative saving. The limit row shows the large-fleet value.

Usage: python3 scripts/savings_table.py [--d 2 3] [--sizes 4 10 25 100 1000]
"""

from __future__ import annotations

import argparse

from conicrig import s_conic, s_euclidean


def saving(n: int, d: int) -> float:
    return 1.0 - s_conic(n, d) / (2.0 * s_euclidean(n, d))


def print_table(sizes: list[int], d: int) -> None:
    print(f"d = {d}")
    print(f"{'n':>6}  {'one-way':>8}  {'two-way':>8}  {'saving':>7}")
    for n in sizes:
        one = s_conic(n, d)
        two = 2 * s_euclidean(n, d)
        print(f"{n:>6}  {one:>8}  {two:>8}  {100.0 * saving(n, d):>6.2f}%")
    limit = 100.0 * (1.0 - (d + 1.0) / (2.0 * d))
    print(f"{'limit':>6}  {'':>8}  {'':>8}  {limit:>6.2f}%")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--d", type=int, nargs="+", default=[2, 3])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[4, 6, 10, 25, 100, 1000]
    )
    args = parser.parse_args()
    for d in args.d:
        if d < 1:
            parser.error("dimensions must be positive")
        print_table([n for n in args.sizes if n >= 2], d)


if __name__ == "__main__":
    main()
