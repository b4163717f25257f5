"""Reference tables for small-rank cells, shipped as data files.

The tables pin down named root vectors (E_12, E_213, ...), inverse braid
action tables, and monomial descriptions of canonical bases for the A3 and
C2 presets.  `verify` runs recompute everything from first principles and
diff against these tables.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Dict, List, Optional, Tuple

from . import braid
from .coeff import RAT_ONE, RatScalar
from .errors import InvalidArgument
from .freealg import NcElement
from .pbw import ExpVec, PBWFrame, PBWVector
from .rootdata import RootDatum, Weight, make_reduced_word
from .canon import single_repetition_Y, _repetition_profile


def load_golden(name: str) -> dict:
    """Load a golden-data file ('a3' or 'c2')."""
    path = resources.files("qschubert.data") / f"{name}_golden.json"
    return json.loads(path.read_text())


def build_element(datum: RootDatum, elements: dict, spec: dict) -> NcElement:
    """Realize one named element from its recipe."""
    if "combo" in spec:
        acc = NcElement.zero(datum)
        for vexp, sign, factors in spec["combo"]:
            term = NcElement.one(datum)
            for f in factors:
                term = term * build_element(datum, elements, elements[f])
            acc = acc + term.scale(RatScalar.v_power(vexp, sign))
        return acc
    if "y_word" in spec:
        word = make_reduced_word(datum, [i - 1 for i in spec["y_word"]])
        frame = PBWFrame(word)
        r, r2 = _repetition_profile(frame)
        return single_repetition_Y(frame, r, r2).expansion()
    x = NcElement.generator(datum, spec["gen"] - 1)
    if "braid" in spec:
        for i in reversed(spec["braid"]):
            x = braid.T(i - 1, x)
    elif "braid_inv" in spec:
        for i in reversed(spec["braid_inv"]):
            x = braid.T_inv(i - 1, x)
    return x


def build_named_elements(datum: RootDatum, data: dict) -> Dict[str, NcElement]:
    return {name: build_element(datum, data["elements"], spec)
            for name, spec in data["elements"].items()}


class MonomialDescription:
    """A monomial model of a basis: ordered named factors, a v-exponent
    quadratic form, and a support condition (free vertices + edge graph)."""

    def __init__(self, datum: RootDatum, section: dict, named: Dict[str, NcElement]):
        self.datum = datum
        self.order: List[str] = section["order"]
        self.scale: int = section["vexp_scale"]
        self.products = section["vexp_products"]
        self.free = set(section["free"])
        adj = {frozenset(e) for e in section["edges"]}
        self.pair_constraints = []
        if "pair_constraints" in section:
            self.pair_constraints = [tuple(p) for p in section["pair_constraints"]]
        else:
            for idx, x in enumerate(self.order):
                for y in self.order[idx + 1:]:
                    if x in self.free or y in self.free:
                        continue
                    if frozenset((x, y)) not in adj:
                        self.pair_constraints.append((x, y))
        self.named = named
        self.degrees = {name: named[name].degree() for name in self.order}

    def vexponent(self, m: Dict[str, int]) -> int:
        e = 0
        for p in self.products:
            fa = sum(c * m.get(n, 0) for n, c in p["a"].items())
            fb = sum(c * m.get(n, 0) for n, c in p["b"].items())
            e += fa * fb
        return e * self.scale

    def admissible(self, m: Dict[str, int]) -> bool:
        return all(min(m.get(x, 0), m.get(y, 0)) == 0
                   for x, y in self.pair_constraints)

    def exponents_of_degree(self, gamma: Weight) -> List[Dict[str, int]]:
        """All admissible exponent dicts with total degree gamma."""
        out: List[Dict[str, int]] = []
        m: Dict[str, int] = {}

        def rec(idx: int, rem: Tuple[int, ...]):
            if idx == len(self.order):
                if not any(rem) and self.admissible(m):
                    out.append(dict(m))
                return
            name = self.order[idx]
            d = self.degrees[name]
            cap = min((r // c for r, c in zip(rem, d) if c), default=0)
            for t in range(cap + 1):
                if t:
                    m[name] = t
                rec(idx + 1, tuple(r - t * c for r, c in zip(rem, d)))
            m.pop(name, None)

        rec(0, gamma)
        return out

    def monomial_coords(self, frame: PBWFrame,
                        factor_coords: Dict[str, PBWVector],
                        m: Dict[str, int]) -> PBWVector:
        """PBW coordinates of the described monomial, in `frame`."""
        acc = PBWVector(frame, {(0,) * frame.m: RatScalar.v_power(self.vexponent(m))})
        for name in self.order:
            t = m.get(name, 0)
            if t:
                acc = acc * (factor_coords[name] ** t)
        return acc


def description_for(datum: RootDatum, data: dict, section_name: str) -> Tuple[MonomialDescription, dict]:
    section = data[section_name] if section_name in data else data["bischubert"][section_name]
    named = build_named_elements(datum, data)
    return MonomialDescription(datum, section, named), section
