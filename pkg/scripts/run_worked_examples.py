#!/usr/bin/env python3
"""Reproduce the five worked threshold computations end to end.

Prints one block per permutation: skeleton digits, landmarks, threshold word,
defining polynomial and the threshold base.  The expected output is pinned in
tests/test_scripts.py, so any regression in the pipeline shows up as a diff.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from negbeta.analysis import analyze, pat_of_word, witness_word  # noqa: E402
from negbeta.permutations import circular, parse_permutation  # noqa: E402
from negbeta.words import format_word  # noqa: E402


def block(text: str) -> None:
    pi = parse_permutation(text)
    r = analyze(pi)
    print(f"pi = {pi}")
    print(f"  circular   = {circular(pi)}")
    print(f"  z          = {r.z}")
    lm = r.landmarks
    print(f"  m,ell,r    = {lm.m},{lm.ell},{lm.r}")
    print(f"  collapsed  = {str(r.collapsed).lower()}")
    print(f"  a          = {r.a}")
    if r.poly is not None:
        print(f"  polynomial = {r.poly}")
    print(f"  B-         = {r.b_decimal(3)}")
    w = witness_word(pi)
    assert pat_of_word(w, pi.n) == pi
    print(f"  witness    = {format_word(w)}")


def main() -> None:
    for text in ["3421", "892364157", "453261", "7325416",
                 "1423", "3142", "2314", "4231"]:
        block(text)


if __name__ == "__main__":
    main()
