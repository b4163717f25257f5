#!/usr/bin/env python3
"""Sweep every preset longest word and certify the solved basis slice by slice.

Prints one line per weight slice: size, worst certification outcome, wall time.
Useful as a smoke test after touching the solver or the certification routes.

    python3 scripts/verify_presets.py --height 5
    python3 scripts/verify_presets.py --only B2 --height 6
"""

import argparse
import time

from qschubert import PBWFrame, lusztig_solve, make_reduced_word, preset, verify_upper_global

LONGEST = {
    "A1": [1],
    "A2": [1, 2, 1],
    "A3": [1, 2, 1, 3, 2, 1],
    "B2": [2, 1, 2, 1],
    "C2": [1, 2, 1, 2],
    "G2": [1, 2, 1, 2, 1, 2],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--height", type=int, default=5, help="max root height per slice")
    ap.add_argument("--only", choices=sorted(LONGEST), help="restrict to one preset")
    args = ap.parse_args()

    bad = 0
    for name, letters in LONGEST.items():
        if args.only and name != args.only:
            continue
        datum = preset(name)
        frame = PBWFrame(make_reduced_word(datum, [i - 1 for i in letters]))
        print(f"== {name}  word={letters}")
        for gamma in frame.degrees_up_to_height(args.height):
            t0 = time.time()
            solved = lusztig_solve(frame, gamma)
            worst = "ok"
            for el in solved.values():
                cert = verify_upper_global(el.pbw_coords)
                if not cert.passed:
                    worst = f"FAIL at a={el.a}"
                    bad += 1
                    break
            print(f"  gamma={gamma}  |B|={len(solved)}  {worst}  ({time.time() - t0:.2f}s)")
    print("all certified" if bad == 0 else f"{bad} failures")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
