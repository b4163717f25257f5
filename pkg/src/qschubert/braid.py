"""Braid-operator layer: underline-E operators, sl2 strings, T_i, root vectors.

For a fixed node i, U_q(n+) carries commuting sl2-actions with E = E_i,
F_+ = d_i, F_- = d_i^op in the variable q_i, where the sl2-weight of a
homogeneous x of degree gamma is |x| = (alpha_i^vee, gamma).  The modified
Lusztig symmetry T_i is computed on ker d_i purely through the sl2-string
decomposition; its inverse acts on ker d_i^op via star conjugation.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .coeff import RAT_ONE, RAT_ZERO, RatScalar, angle_fact, binom, round_fact
from .errors import (DomainViolation, InvalidArgument, NotInKernel,
                     TheoryViolation)
from .freealg import NcElement, is_zero, partial, partial_divided
from .rootdata import ReducedWord, RootDatum


def _E_divided(datum: RootDatum, i: int, n: int) -> NcElement:
    """E_i^<n> = E_i^n / <n>_{q_i}!."""
    coeff = RAT_ONE
    if n:
        coeff = RatScalar.from_laurent(angle_fact(n, datum.qi_scale(i))).inverse()
    return NcElement.word(datum, (i,) * n, coeff)


def ul_E(i: int, variant: str, r: int, x: NcElement) -> NcElement:
    """The divided power operator (E_i)^(r) or (E_i^op)^(r) on homogeneous x."""
    if r < 0:
        raise InvalidArgument("negative divided power")
    if variant not in ("plus", "op"):
        raise InvalidArgument("variant must be 'plus' or 'op'")
    datum = x.datum
    if x.is_structurally_zero():
        return x
    gamma = x.degree()
    weight = datum.covector(i, gamma)
    d = datum.symmetrizers[i]
    out = NcElement(datum)
    for r1 in range(r + 1):
        r2 = r - r1
        if variant == "plus":
            sign = (-1) ** r1
            e = d * (r + weight - 1) * (r1 - r2)
        else:
            sign = (-1) ** r2
            e = d * (r + weight - 1) * (r2 - r1)
        c = RatScalar.v_power(e, sign)
        out = out + (_E_divided(datum, i, r1) * x * _E_divided(datum, i, r2)).scale(c)
    return out


def ul_F(i: int, variant: str, s: int, y: NcElement) -> NcElement:
    """(F_i)^(s) on ker d_i^op is d_i^(s); (F_i^op)^(s) on ker d_i is (d_i^op)^(s)."""
    if variant == "plus":
        if not is_zero(partial(i, "left", y)):
            raise DomainViolation("ul_F(plus) requires ker d_i^op")
        return partial_divided(i, "right", s, y)
    if variant == "op":
        if not is_zero(partial(i, "right", y)):
            raise DomainViolation("ul_F(op) requires ker d_i")
        return partial_divided(i, "left", s, y)
    raise InvalidArgument("variant must be 'plus' or 'op'")


class Sl2Decomposition:
    """x = sum_r (E_i^op)^(r)(x_r) with each x_r killed by both derivations."""

    def __init__(self, i: int, gamma, parts: Dict[int, NcElement]):
        self.i = i
        self.gamma = gamma
        self.parts = parts

    def reassemble(self) -> NcElement:
        datum = next(iter(self.parts.values())).datum if self.parts else None
        acc = None
        for r, xr in self.parts.items():
            term = ul_E(self.i, "op", r, xr)
            acc = term if acc is None else acc + term
        return acc if acc is not None else NcElement.zero(datum)


def sl2_decompose(i: int, x: NcElement) -> Sl2Decomposition:
    """Decompose x in ker d_i along the (E_i^op)-strings."""
    datum = x.datum
    if not is_zero(partial(i, "right", x)):
        raise NotInKernel(f"element is not killed by d_{i}")
    gamma = x.degree()
    weight = datum.covector(i, gamma)
    parts: Dict[int, NcElement] = {}
    y = x
    prev_n = None
    while not is_zero(y):
        # top string length under d_i^op
        n = 0
        z = y
        while True:
            z = partial(i, "left", z)
            if is_zero(z):
                break
            n += 1
        if prev_n is not None and n >= prev_n:
            raise TheoryViolation("string extraction failed to descend")
        prev_n = n
        top = partial_divided(i, "left", n, y)
        denom = binom(2 * n - weight, n, datum.qi_scale(i))
        if denom.is_zero():
            raise TheoryViolation("vanishing string binomial in admissible range")
        xn = top.scale(RatScalar.from_laurent(denom).inverse())
        parts[n] = xn
        y = y - ul_E(i, "op", n, xn)
    for r in parts:
        if r < max(0, weight):
            raise TheoryViolation("string index below the admissible range")
    return Sl2Decomposition(i, gamma, parts)


def T(i: int, x: NcElement) -> NcElement:
    """Lusztig symmetry on ker d_i via the string formula."""
    datum = x.datum
    try:
        dec = sl2_decompose(i, x)
    except NotInKernel as exc:
        raise DomainViolation(str(exc)) from None
    if not dec.parts:
        return NcElement.zero(datum)
    weight = datum.covector(i, dec.gamma)
    acc = NcElement.zero(datum)
    for r, xr in dec.parts.items():
        acc = acc + ul_E(i, "plus", r - weight, xr)
    return acc


def T_inv(i: int, y: NcElement) -> NcElement:
    """Inverse symmetry on ker d_i^op: star . T_i . star."""
    if not is_zero(partial(i, "left", y)):
        raise DomainViolation(f"element is not killed by d_{i}^op")
    return T(i, y.star()).star()


def root_vector(word: ReducedWord, k: int) -> NcElement:
    """X_{i,k} = T_{i_1} ... T_{i_{k-1}}(E_{i_k}), 1-indexed position k."""
    if not 1 <= k <= len(word):
        raise InvalidArgument(f"position {k} out of range")
    datum = word.datum
    x = NcElement.generator(datum, word.letters[k - 1])
    for t in range(k - 2, -1, -1):
        x = T(word.letters[t], x)
    return x


def E_ji_l(datum: RootDatum, i: int, j: int, l: int) -> NcElement:
    """E_{j i^l} = binom(-a_ij, l)_{q_i}^{-1} (E_i^op)^(l)(E_j)."""
    if i == j:
        raise InvalidArgument("requires distinct nodes")
    m = -datum.gcm[i][j]
    if not 0 <= l <= m:
        raise InvalidArgument(f"l must lie in 0..{m}")
    b = binom(m, l, datum.qi_scale(i))
    return ul_E(i, "op", l, NcElement.generator(datum, j)).scale(
        RatScalar.from_laurent(b).inverse())


def E_il_j(datum: RootDatum, i: int, j: int, l: int) -> NcElement:
    """E_{i^l j} = (E_{j i^l})^*."""
    return E_ji_l(datum, i, j, l).star()


# ----------------------------------------------------------------------
# Clebsch-Gordan coefficient combinatorics (standalone, variable v)
# ----------------------------------------------------------------------


def _round_fact_quotient(hi: int, lo: int, scale: int):
    """(hi)_v! / (lo)_v! as a falling product, hi >= lo >= 0."""
    from .coeff import ONE, round_int
    out = ONE
    for t in range(lo + 1, hi + 1):
        out = out * round_int(t, scale)
    return out


def cg_coefficient(r: int, t1: int, t2: int, m: int, n: int):
    """C_{r;t',t''}(v) for the tensor square of sl2-strings of lengths m, n.

    The defining sum involves genuinely half-integer v-powers (already for
    m = n = 1), so the result is returned in a doubled-exponent convention:
    exponent e of the returned LaurentScalar stands for v^(e/2).  The plain
    v-combinatorics inside (brackets, binomials) therefore use scale 2.
    """
    from .coeff import LaurentScalar, binom as qbinom
    if r < 0 or r > min(m, n) or not (0 <= t1 <= m) or not (0 <= t2 <= n):
        raise InvalidArgument("indices out of range for C_{r;t',t''}")
    acc = LaurentScalar()
    for k in range(r + 1):
        l = r - k
        e = 2 * (l * t1 - k * t2) + (k - l) * (1 + m + n - r)
        term = LaurentScalar.v_power(e, (-1) ** l)
        term = term * _round_fact_quotient(n - l, n - r, 2)
        term = term * _round_fact_quotient(m - k, m - r, 2)
        term = term * qbinom(t1, k, 2)
        term = term * qbinom(t2, l, 2)
        acc = acc + term
    return acc.shift(m * t2 - n * t1)
