#!/usr/bin/env python3
"""Check that the solved basis does not depend on the chosen reduced word.

Solves the same cell in two PBW frames related by braid moves and compares
the resulting bases slice by slice (as subsets of the tensor algebra).

    python3 scripts/frame_independence.py --type A2 --word 1,2,1 --word2 2,1,2
    python3 scripts/frame_independence.py --type B2 --word 1,2,1,2 --word2 2,1,2,1 --height 6
"""

import argparse
import time

from qschubert import PBWFrame, compare_frames, make_reduced_word, preset


def parse_word(s):
    return [int(t) - 1 for t in s.split(",")]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A2")
    ap.add_argument("--word", default="1,2,1")
    ap.add_argument("--word2", default="2,1,2")
    ap.add_argument("--height", type=int, default=5)
    args = ap.parse_args()

    datum = preset(args.type)
    f1 = PBWFrame(make_reduced_word(datum, parse_word(args.word)))
    f2 = PBWFrame(make_reduced_word(datum, parse_word(args.word2)))

    bad = 0
    for gamma in f1.degrees_up_to_height(args.height):
        t0 = time.time()
        same = compare_frames(f1, f2, gamma)
        bad += 0 if same else 1
        print(f"gamma={gamma}  {'equal' if same else 'DIFFER'}  ({time.time() - t0:.2f}s)")
    print("frames agree on every slice" if bad == 0 else f"{bad} slices differ")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
