"""Tensor-algebra representatives of elements of U_q(n+).

Elements are finite linear combinations of words over the node set with
RatScalar coefficients.  Representatives are non-canonical: all equality-
sensitive logic routes through the bilinear form <<.,.>> whose radical is
exactly the defining ideal, so ``is_zero`` decides equality in the quotient.

The form is evaluated by peeling letters with the skew derivations:
<<x, w E_i>> = (q_i - q_i^-1) <<d_i(x), w>>, with <<c, c'>> = c c' in degree
zero.  Word-level pairings are memoized (write-once) on the root datum.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, Tuple

from .coeff import (RAT_ONE, RAT_ZERO, LaurentScalar, RatScalar, angle_fact,
                    in_A0, round_fact)
from .errors import DegreeTooLarge, InvalidArgument, ZeroElement
from .rootdata import RootDatum, Weight

Word = Tuple[int, ...]


@dataclass
class Config:
    """Word-enumeration guards for the zero/lattice oracles."""

    max_height: int = 16
    max_words: int = 200_000


config = Config()


class NcElement:
    """Linear combination of words over I with RatScalar coefficients."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Dict[Word, RatScalar] = None):
        self.datum = datum
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, datum: RootDatum) -> "NcElement":
        return cls(datum)

    @classmethod
    def one(cls, datum: RootDatum) -> "NcElement":
        return cls(datum, {(): RAT_ONE})

    @classmethod
    def generator(cls, datum: RootDatum, i: int) -> "NcElement":
        if not 0 <= i < datum.rank:
            raise InvalidArgument(f"node {i} out of range")
        return cls(datum, {(i,): RAT_ONE})

    @classmethod
    def word(cls, datum: RootDatum, letters: Word, coeff: RatScalar = RAT_ONE) -> "NcElement":
        return cls(datum, {tuple(letters): coeff})

    # -- structure ----------------------------------------------------

    def is_structurally_zero(self) -> bool:
        """No stored terms (sufficient but not necessary for zero)."""
        return not self.terms

    def word_degree(self, w: Word) -> Weight:
        g = [0] * self.datum.rank
        for i in w:
            g[i] += 1
        return tuple(g)

    def components(self) -> Dict[Weight, "NcElement"]:
        """Split into homogeneous components by Q+-degree."""
        out: Dict[Weight, NcElement] = {}
        for w, c in self.terms.items():
            g = self.word_degree(w)
            out.setdefault(g, NcElement(self.datum)).terms[w] = c
        return out

    def degree(self) -> Weight:
        """Degree of a homogeneous element (InvalidArgument otherwise)."""
        comps = self.components()
        if len(comps) > 1:
            raise InvalidArgument("element is not homogeneous")
        if not comps:
            return self.datum.zero()
        return next(iter(comps))

    # -- linear algebra -----------------------------------------------

    def __add__(self, other: "NcElement") -> "NcElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, RAT_ZERO) + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        out = NcElement(self.datum)
        out.terms = t
        return out

    def __neg__(self) -> "NcElement":
        out = NcElement(self.datum)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NcElement") -> "NcElement":
        return self + (-other)

    def scale(self, c: RatScalar) -> "NcElement":
        if c.is_zero():
            return NcElement(self.datum)
        out = NcElement(self.datum)
        out.terms = {w: c * cw for w, cw in self.terms.items()}
        return out

    def __mul__(self, other: "NcElement") -> "NcElement":
        t: Dict[Word, RatScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = t.get(w, RAT_ZERO) + c1 * c2
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        out = NcElement(self.datum)
        out.terms = t
        return out

    def __pow__(self, n: int) -> "NcElement":
        if n < 0:
            raise InvalidArgument("negative power")
        out = NcElement.one(self.datum)
        for _ in range(n):
            out = out * self
        return out

    # -- involutions --------------------------------------------------

    def bar(self) -> "NcElement":
        out = NcElement(self.datum)
        out.terms = {w[::-1]: c.bar() for w, c in self.terms.items()}
        return out

    def star(self) -> "NcElement":
        out = NcElement(self.datum)
        out.terms = {w[::-1]: c for w, c in self.terms.items()}
        return out

    def tilde(self) -> "NcElement":
        out = NcElement(self.datum)
        for w, c in self.terms.items():
            s = self.datum.sgn(self.word_degree(w))
            cc = c.bar()
            out.terms[w[::-1]] = cc if s > 0 else -cc
        return out

    # -- io -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        """Structural equality of stored terms (use `equal` for equality
        modulo the radical of the pairing)."""
        if not isinstance(other, NcElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def sorted_terms(self) -> List[Tuple[Word, RatScalar]]:
        return sorted(self.terms.items())

    def to_json(self):
        return {"terms": [{"word": [i + 1 for i in w], "coeff": c.to_json()}
                          for w, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, datum: RootDatum, data) -> "NcElement":
        terms: Dict[Word, RatScalar] = {}
        for t in data["terms"]:
            w = tuple(int(i) - 1 for i in t["word"])
            c = RatScalar.from_json(t["coeff"])
            terms[w] = terms.get(w, RAT_ZERO) + c
        return cls(datum, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "E_{" + " ".join(str(i + 1) for i in w) + "}" if w else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NcElement({self})"


# ----------------------------------------------------------------------
# Skew derivations
# ----------------------------------------------------------------------


def _partial_word(datum: RootDatum, i: int, w: Word, side: str) -> List[Tuple[int, Word]]:
    """List of (v-exponent, word) terms of the derivation of a single word."""
    hits = [p for p, j in enumerate(w) if j == i]
    if not hits:
        return []
    # (alpha_i, alpha_{w[t]}) for each position, then prefix sums
    vals = [datum.pairing(datum.alpha(i), datum.alpha(j)) for j in w]
    total = sum(vals)
    out = []
    pre = 0
    p_iter = iter(hits)
    nxt = next(p_iter, None)
    for p, val in enumerate(vals):
        if p == nxt:
            suf = total - pre - val
            e = suf - pre if side == "right" else pre - suf
            out.append((e, w[:p] + w[p + 1:]))
            nxt = next(p_iter, None)
        pre += val
    return out


def partial(i: int, side: str, x: NcElement) -> NcElement:
    """Skew derivation: side='right' is d_i, side='left' is d_i^op."""
    if side not in ("left", "right"):
        raise InvalidArgument("side must be 'left' or 'right'")
    datum = x.datum
    out = NcElement(datum)
    for w, c in x.terms.items():
        for e, w2 in _partial_word(datum, i, w, side):
            s = out.terms.get(w2, RAT_ZERO) + c * RatScalar.v_power(e)
            if s.is_zero():
                out.terms.pop(w2, None)
            else:
                out.terms[w2] = s
    return out


def partial_divided(i: int, side: str, n: int, x: NcElement) -> NcElement:
    """Divided power d_i^(n) = d_i^n / (n)_{q_i}!."""
    if n < 0:
        raise InvalidArgument("negative divided power")
    y = x
    for _ in range(n):
        y = partial(i, side, y)
    if n >= 2:
        y = y.scale(RatScalar.from_laurent(round_fact(n, x.datum.qi_scale(i))).inverse())
    return y


# ----------------------------------------------------------------------
# Word enumeration
# ----------------------------------------------------------------------


def word_count(g: Weight) -> int:
    n = sum(g)
    total = 1
    for c in g:
        total *= comb(n, c)
        n -= c
    return total


def _check_degree(datum: RootDatum, g: Weight) -> None:
    if sum(g) > config.max_height or word_count(g) > config.max_words:
        raise DegreeTooLarge(f"degree {g} exceeds enumeration bounds")


def words_of_degree(datum: RootDatum, g: Weight) -> Iterator[Word]:
    """All words with letter multiset g, in lexicographic order."""
    counts = list(g)

    def rec(prefix):
        if not any(counts):
            yield tuple(prefix)
            return
        for i in range(datum.rank):
            if counts[i]:
                counts[i] -= 1
                prefix.append(i)
                yield from rec(prefix)
                prefix.pop()
                counts[i] += 1

    yield from rec([])


def divided_monomials(datum: RootDatum, g: Weight) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Block sequences ((j1,n1),...) with adjacent letters distinct, degree g."""
    counts = list(g)

    def rec(prefix, last):
        if not any(counts):
            yield tuple(prefix)
            return
        for i in range(datum.rank):
            if counts[i] and i != last:
                for n in range(1, counts[i] + 1):
                    counts[i] -= n
                    prefix.append((i, n))
                    yield from rec(prefix, i)
                    prefix.pop()
                    counts[i] += n

    yield from rec([], -1)


def divided_monomial_element(datum: RootDatum, blocks: Tuple[Tuple[int, int], ...]) -> NcElement:
    """E_{j1}^<n1> ... E_{jk}^<nk> as an NcElement."""
    word: List[int] = []
    coeff = RAT_ONE
    for j, n in blocks:
        word.extend([j] * n)
        coeff = coeff * RatScalar.from_laurent(angle_fact(n, datum.qi_scale(j))).inverse()
    return NcElement.word(datum, tuple(word), coeff)


# ----------------------------------------------------------------------
# The bilinear form and the zero oracle
# ----------------------------------------------------------------------


def _angle1(datum: RootDatum, i: int) -> RatScalar:
    """q_i - q_i^-1 as a RatScalar."""
    s = datum.qi_scale(i)
    return RatScalar.from_laurent(LaurentScalar({s: 1, -s: -1}))


def _pair_words(datum: RootDatum, wx: Word, wy: Word) -> RatScalar:
    if not wy:
        return RAT_ONE if not wx else RAT_ZERO
    memo = datum._pair_memo
    key = (wx, wy)
    hit = memo.get(key)
    if hit is not None:
        return hit
    i = wy[-1]
    rest = wy[:-1]
    acc = RAT_ZERO
    for e, w2 in _partial_word(datum, i, wx, "right"):
        acc = acc + RatScalar.v_power(e) * _pair_words(datum, w2, rest)
    result = _angle1(datum, i) * acc
    memo.setdefault(key, result)
    return result


def pair(x: NcElement, y: NcElement) -> RatScalar:
    """The normalized bilinear form <<x, y>>."""
    datum = x.datum
    by_deg: Dict[Weight, List[Tuple[Word, RatScalar]]] = {}
    for w, c in y.terms.items():
        by_deg.setdefault(y.word_degree(w), []).append((w, c))
    acc = RAT_ZERO
    for wx, cx in x.terms.items():
        g = x.word_degree(wx)
        for wy, cy in by_deg.get(g, ()):
            acc = acc + cx * cy * _pair_words(datum, wx, wy)
    return acc


def is_zero(x: NcElement) -> bool:
    """True iff x lies in the radical, i.e. represents 0 in U_q(n+)."""
    if not x.terms:
        return True
    datum = x.datum
    for g, comp in x.components().items():
        _check_degree(datum, g)
        for w in words_of_degree(datum, g):
            acc = RAT_ZERO
            for wx, cx in comp.terms.items():
                acc = acc + cx * _pair_words(datum, wx, w)
            if not acc.is_zero():
                return False
    return True


def equal(x: NcElement, y: NcElement) -> bool:
    return is_zero(x - y)


def lattice_member(x: NcElement) -> bool:
    """Test x in U^Z(n+) by pairing against divided-power monomials."""
    if not x.terms:
        return True
    datum = x.datum
    g = x.degree()
    _check_degree(datum, g)
    for blocks in divided_monomials(datum, g):
        val = pair(x, divided_monomial_element(datum, blocks))
        if not in_A0(val):
            return False
    return True


def ell(i: int, side: str, x: NcElement) -> int:
    """Max k >= 0 with d_i^k(x) nonzero modulo the radical."""
    if is_zero(x):
        raise ZeroElement("ell undefined on zero")
    k = 0
    y = x
    while True:
        y = partial(i, side, y)
        if is_zero(y):
            return k
        k += 1


def partial_top(i: int, side: str, x: NcElement) -> Tuple[int, NcElement]:
    """(ell_i(x), d_i^(top)(x)) with the divided-power normalization."""
    l = ell(i, side, x)
    return l, partial_divided(i, side, l, x)
