#!/usr/bin/env python3
"""Tabulate string names and bar-transition data for one cell.

For each weight slice up to the height bound this prints the solved basis
elements with their string parametrization and norm certificate, followed by
the bar matrix in the PBW basis (entries as Laurent polynomials in v).

    python3 scripts/strings_and_bar.py --type A2 --word 1,2,1 --height 4
    python3 scripts/strings_and_bar.py --type C2 --word 2,1,2,1 --height 6 --no-matrix
"""

import argparse

from qschubert import PBWFrame, lusztig_solve, make_reduced_word, preset


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A2")
    ap.add_argument("--word", default="1,2,1")
    ap.add_argument("--height", type=int, default=4)
    ap.add_argument("--no-matrix", action="store_true", help="skip the bar matrix dump")
    args = ap.parse_args()

    datum = preset(args.type)
    letters = [int(t) - 1 for t in args.word.split(",")]
    frame = PBWFrame(make_reduced_word(datum, letters))

    for gamma in frame.degrees_up_to_height(args.height):
        solved = lusztig_solve(frame, gamma)
        print(f"== gamma={gamma}  ({len(solved)} elements)")
        for a, el in sorted(solved.items()):
            string = " ".join(f"{i + 1}^{n}" for i, n in el.string())
            print(f"  a={list(a)}  string=[{string}]  norm={el.norm_certificate()}")
        if args.no_matrix:
            continue
        M = frame.bar_matrix(gamma)
        for x in sorted(M):
            row = {tuple(y): str(c) for y, c in sorted(M[x].items())}
            print(f"  bar(X^{list(x)}) = {row}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
