#!/usr/bin/env python3
"""Print the threshold spectrum for all permutations of length up to 4,
grouped by base, in the reference table layout (value, defining polynomial,
permutations attaining it)."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from negbeta.analysis import spectrum  # noqa: E402


def main() -> None:
    groups = []
    for n in (2, 3, 4):
        for g in spectrum(n):
            groups.append((n, g))
    print(f"{'B-':8}  {'root of':22}  permutations")
    for n, g in groups:
        perms = ", ".join(str(p) for p in g.members)
        print(f"{g.decimal(3):8}  {str(g.poly):22}  {perms}")


if __name__ == "__main__":
    main()
