"""Command-line front end.

Subcommands: roots, relations, basis, expand, verify, compare, embed,
bischubert, strings.  Output is deterministic (fixed lexicographic
orderings) in text or JSON form.  Exit codes: 0 = success / all checks
pass, 1 = a verification failed, 2 = invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from typing import Dict, List, Optional

from . import canon, freealg, golden
from .coeff import RatScalar, in_A0
from .errors import NotInCell, NotReduced, QSchubertError, TheoryViolation
from .freealg import NcElement
from .pbw import PBWFrame, PBWVector, check_bar_involutive, lambda_commutator_check
from .rootdata import PRESET_NAMES, RootDatum, make_reduced_word, preset


def _parse_word(s: str) -> List[int]:
    try:
        letters = [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise SystemExit(_fail2(f"cannot parse word {s!r}"))
    if not letters or any(i < 1 for i in letters):
        raise SystemExit(_fail2(f"word must be 1-indexed positive nodes: {s!r}"))
    return [i - 1 for i in letters]


def _fail2(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _load_datum(args) -> RootDatum:
    if args.gcm:
        try:
            with open(args.gcm) as fh:
                return RootDatum.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise SystemExit(_fail2(f"cannot load datum from {args.gcm}: {exc}"))
    if args.type:
        return preset(args.type)
    raise SystemExit(_fail2("one of --type or --gcm is required"))


def _make_frame(datum: RootDatum, letters: List[int]) -> PBWFrame:
    try:
        return PBWFrame(make_reduced_word(datum, letters))
    except NotReduced as exc:
        raise SystemExit(_fail2(f"word is not reduced at position {exc.position}"))


def _word_str(frame: PBWFrame) -> str:
    return ",".join(str(i + 1) for i in frame.word.letters)


# ----------------------------------------------------------------------
# pairing-memo persistence (optional)
# ----------------------------------------------------------------------


def _cache_path(datum: RootDatum) -> Optional[str]:
    root = os.environ.get("QSCHUBERT_CACHE_DIR")
    if not root:
        return None
    key = hashlib.sha256(json.dumps(datum.to_json(), sort_keys=True).encode()).hexdigest()[:16]
    return os.path.join(root, f"pairs-{key}.json")


def _load_cache(datum: RootDatum) -> None:
    path = _cache_path(datum)
    if not path or not os.path.exists(path):
        return
    try:
        with open(path) as fh:
            raw = json.load(fh)
        for k, v in raw.items():
            wx, _, wy = k.partition("|")
            key = (tuple(int(t) for t in wx.split(".") if t),
                   tuple(int(t) for t in wy.split(".") if t))
            datum._pair_memo[key] = RatScalar.from_json(v)
    except (OSError, ValueError, KeyError):
        pass  # a stale or corrupt cache is ignored, never fatal


def _save_cache(datum: RootDatum) -> None:
    path = _cache_path(datum)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    raw = {}
    for (wx, wy), v in datum._pair_memo.items():
        raw[".".join(map(str, wx)) + "|" + ".".join(map(str, wy))] = v.to_json()
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(raw, fh)
    os.replace(tmp, path)


# ----------------------------------------------------------------------
# serialization helpers
# ----------------------------------------------------------------------


def _coords_json(vec: PBWVector) -> list:
    return [{"a": list(a), "coeff": c.to_json()} for a, c in vec.sorted_coords()]


def _coords_text(vec: PBWVector) -> str:
    if vec.is_zero():
        return "0"
    return " + ".join(f"({c})*X^{list(a)}" for a, c in vec.sorted_coords())


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_roots(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    records, lines = [], []
    for k in range(1, frame.m + 1):
        x = frame.root_vector(k)
        records.append({"position": k, "degree": list(frame.roots[k - 1]),
                        "vector": x.to_json()})
        lines.append(f"X_{k}  degree {list(frame.roots[k - 1])}  {x}")
    _emit(args, {"word": _word_str(frame), "roots": records}, lines)
    return 0


def cmd_relations(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    records, lines = [], []
    for k in range(1, frame.m + 1):
        for l in range(k + 1, frame.m + 1):
            c = datum.pairing(frame.roots[k - 1], frame.roots[l - 1])
            rhs = frame.straighten(k, l)
            records.append({"k": k, "l": l, "pairing": c, "rhs": _coords_json(rhs)})
            lines.append(
                f"q^(-{c}/2) X_{l} X_{k} - q^({c}/2) X_{k} X_{l} = "
                f"(q_i - q_i^-1) * [{_coords_text(rhs)}]")
    _emit(args, {"word": _word_str(frame), "relations": records}, lines)
    return 0


def _solved_slices(frame: PBWFrame, bound: int):
    for gamma in frame.degrees_up_to_height(bound):
        yield gamma, canon.lusztig_solve(frame, gamma)


def cmd_basis(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    records, lines = [], []
    for gamma, solved in _solved_slices(frame, args.degree_bound):
        for a in sorted(solved):
            el = solved[a]
            string = el.string()
            norm = el.norm_certificate()
            records.append({
                "degree": list(gamma), "a": list(a),
                "coords": _coords_json(el.pbw_coords),
                "string": [[i + 1, n] for i, n in string],
                "norm": norm.to_json(),
            })
            sname = "".join(f"({i + 1},{n})" for i, n in string) or "()"
            lines.append(f"degree {list(gamma)}  a={list(a)}  string {sname}  "
                         f"norm {norm}  b = {_coords_text(el.pbw_coords)}")
    _emit(args, {"word": _word_str(frame), "basis": records}, lines)
    return 0


def cmd_strings(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    records, lines = [], []
    for gamma, solved in _solved_slices(frame, args.degree_bound):
        for a in sorted(solved):
            string = solved[a].string()
            records.append({"degree": list(gamma), "a": list(a),
                            "string": [[i + 1, n] for i, n in string]})
            sname = "".join(f"({i + 1},{n})" for i, n in string) or "()"
            lines.append(f"degree {list(gamma)}  a={list(a)}  string {sname}")
    _emit(args, {"word": _word_str(frame), "strings": records}, lines)
    return 0


def cmd_expand(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    try:
        x = NcElement.from_json(datum, json.load(sys.stdin))
    except (ValueError, KeyError) as exc:
        return _fail2(f"cannot parse element: {exc}")
    try:
        vec = frame.pbw_expand(x)
    except NotInCell:
        print("not a member of the cell")
        return 1
    _emit(args, {"word": _word_str(frame), "coords": _coords_json(vec)},
          [_coords_text(vec)])
    return 0


def cmd_compare(args) -> int:
    datum = _load_datum(args)
    if not args.word2:
        return _fail2("--word2 is required")
    f1 = _make_frame(datum, _parse_word(args.word))
    f2 = _make_frame(datum, _parse_word(args.word2))
    records, lines, ok = [], [], True
    for gamma in f1.degrees_up_to_height(args.degree_bound):
        same = canon.compare_frames(f1, f2, gamma)
        ok = ok and same
        records.append({"degree": list(gamma), "equal": same})
        lines.append(f"degree {list(gamma)}: {'equal' if same else 'DIFFER'}")
    _emit(args, {"equal": ok, "slices": records}, lines)
    return 0 if ok else 1


def cmd_embed(args) -> int:
    datum = _load_datum(args)
    if not args.word2:
        return _fail2("--word2 is required")
    w = make_reduced_word(datum, _parse_word(args.word))
    w2 = make_reduced_word(datum, _parse_word(args.word2))
    big = _make_frame(datum, list(w.letters) + list(w2.letters))
    records, lines, ok = [], [], True
    for gamma in big.degrees_up_to_height(args.degree_bound):
        rep = canon.check_embedding(w, w2, gamma)
        ok = ok and rep.passed
        records.append({"degree": list(gamma), "passed": rep.passed,
                        "failures": rep.failures})
        lines.append(f"degree {list(gamma)}: "
                     f"{'ok' if rep.passed else '; '.join(rep.failures)}")
    _emit(args, {"passed": ok, "slices": records}, lines)
    return 0 if ok else 1


def cmd_bischubert(args) -> int:
    datum = _load_datum(args)
    if not args.word2:
        return _fail2("--word2 is required")
    w = make_reduced_word(datum, _parse_word(args.word))
    w2 = make_reduced_word(datum, _parse_word(args.word2))
    frame = PBWFrame(w)
    records, lines = [], []
    for gamma in frame.degrees_up_to_height(args.degree_bound):
        for el in canon.bi_schubert(w, w2, gamma):
            records.append({"degree": list(gamma), "a": list(el.a),
                            "coords": _coords_json(el.pbw_coords)})
            lines.append(f"degree {list(gamma)}  a={list(el.a)}  "
                         f"b = {_coords_text(el.pbw_coords)}")
    _emit(args, {"elements": records}, lines)
    return 0


def _verify_frame(args, datum: RootDatum, frame: PBWFrame, problems: List[str]) -> None:
    rng = random.Random(args.seed)
    gammas = frame.degrees_up_to_height(args.degree_bound)
    for gamma in gammas:
        slice_ = frame.slice_vectors(gamma)
        try:
            if not check_bar_involutive(frame, gamma):
                problems.append(f"bar matrix not involutive at {list(gamma)}")
        except TheoryViolation as exc:
            problems.append(f"bar matrix at {list(gamma)}: {exc}")
            continue
        solved = canon.lusztig_solve(frame, gamma)
        for a in sorted(solved):
            cert = canon.verify_upper_global(solved[a], seed=args.seed,
                                             alt_paths=args.check_level == "full")
            if not cert.passed:
                problems.append(f"certificate failed at degree {list(gamma)}, a={list(a)}")
        # sampled Lambda-commutation containments
        if len(slice_) > 1:
            for _ in range(2 if args.check_level == "fast" else 5):
                a = rng.choice(slice_)
                b = rng.choice(slice_)
                if not lambda_commutator_check(frame, a, b):
                    problems.append(f"commutation containment failed for {a}, {b}")
    # sampled orthonormality of the PBW monomials (representative pairing)
    small = [g for g in gammas if sum(g) <= min(4, args.degree_bound)]
    pairs = 10 if args.check_level == "fast" else 25
    for _ in range(pairs):
        gamma = rng.choice(small)
        slice_ = frame.slice_vectors(gamma)
        if not slice_:
            continue
        a, b = rng.choice(slice_), rng.choice(slice_)
        lhs = freealg.pair(frame.pbw_monomial(a), frame.pbw_monomial(b))
        mu_inv = RatScalar.from_laurent(datum.mu(gamma)).inverse()
        expect = frame.norm_factor(a) if a == b else None
        got = lhs * mu_inv
        if (expect is None and not got.is_zero()) or (expect is not None and got != expect):
            problems.append(f"orthonormality failed for {a}, {b}")


def _verify_golden(args, datum: RootDatum, problems: List[str]) -> None:
    name = (datum.name or "").lower()
    if name not in ("a3", "c2"):
        return
    data = golden.load_golden(name)
    desc, sec = golden.description_for(datum, data, "bup")
    frame = PBWFrame(make_reduced_word(datum, [i - 1 for i in sec["word"]]))
    fac = {n: frame.pbw_expand(desc.named[n]) for n in desc.order}
    for gamma in frame.degrees_up_to_height(min(args.degree_bound, 4)):
        solved = canon.lusztig_solve(frame, gamma)
        sigs = {tuple(sorted(el.pbw_coords.coords.items())) for el in solved.values()}
        monos = desc.exponents_of_degree(gamma)
        msigs = {tuple(sorted(desc.monomial_coords(frame, fac, m).coords.items()))
                 for m in monos}
        if sigs != msigs:
            problems.append(f"golden monomial table differs at degree {list(gamma)}")


def cmd_verify(args) -> int:
    datum = _load_datum(args)
    frame = _make_frame(datum, _parse_word(args.word))
    problems: List[str] = []
    _verify_frame(args, datum, frame, problems)
    if args.check_level == "full":
        _verify_golden(args, datum, problems)
    payload = {"passed": not problems, "problems": problems}
    lines = [f"FAIL: {p}" for p in problems] or ["all checks passed"]
    _emit(args, payload, lines)
    return 0 if not problems else 1


COMMANDS = {
    "roots": cmd_roots,
    "relations": cmd_relations,
    "basis": cmd_basis,
    "expand": cmd_expand,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "embed": cmd_embed,
    "bischubert": cmd_bischubert,
    "strings": cmd_strings,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qschubert",
        description="Canonical bases of quantum Schubert cells, exactly.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--type", choices=PRESET_NAMES, help="Cartan preset")
    p.add_argument("--gcm", help="JSON file with rank/cartan_matrix/symmetrizers")
    p.add_argument("--word", help="reduced word, 1-indexed, comma-separated")
    p.add_argument("--word2", help="second reduced word where applicable")
    p.add_argument("--degree-bound", type=int, default=4, dest="degree_bound")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--check-level", choices=("fast", "full"), default="fast",
                   dest="check_level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-words", type=int, default=None, dest="max_words",
                   help="word-enumeration guard bound")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.degree_bound < 1:
        return _fail2("--degree-bound must be >= 1")
    if args.max_words is not None:
        if args.max_words < 1:
            return _fail2("--max-words must be >= 1")
        freealg.config.max_words = args.max_words
    if not args.word:
        return _fail2("--word is required")
    datum = None
    try:
        datum = _load_datum(args)
        _load_cache(datum)
        code = COMMANDS[args.command](args)
        _save_cache(datum)
        return code
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except QSchubertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
