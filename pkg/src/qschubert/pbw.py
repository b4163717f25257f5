"""PBW frames for quantum Schubert cells.

A frame bundles a reduced word with its root vectors X_k, the normalized
monomials X^a = q_{i,a} X_1^{a1} ... X_m^{am}, the straightening table, the
skew form Lambda, and the monoid partial order on exponent vectors.

Expansion of an arbitrary tensor-algebra element into PBW coordinates goes
through the dual pairing <<X^a, X^<a'>>> = delta (which doubles as the cell
membership test).  Products, bar images and skew derivations of elements
already given in coordinates are computed by straightening rewriting, which
stays exact at degrees far beyond what word enumeration can reach.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Tuple

from .coeff import (ONE, RAT_ONE, RAT_ZERO, LaurentScalar, RatScalar,
                    angle_fact, in_A0)
from .errors import (DegreeTooLarge, IntegralityViolation, InvalidArgument,
                     NotInCell, TheoryViolation)
from . import braid
from .freealg import NcElement, is_zero, pair, partial
from .rootdata import ReducedWord, Weight

ExpVec = Tuple[int, ...]


class PBWFrame:
    """A reduced word together with its PBW apparatus.  Immutable facade."""

    def __init__(self, word: ReducedWord):
        self.word = word
        self.datum = word.datum
        self.m = len(word)
        self.roots = word.roots
        self._root_vectors: List[Optional[NcElement]] = [None] * self.m
        self._root_pair = [[self.datum.pairing(a, b) for b in self.roots] for a in self.roots]
        self._straight: Dict[Tuple[int, int], Dict[ExpVec, RatScalar]] = {}
        self._rewrite_rules: Dict[Tuple[int, int], List[Tuple[Tuple[int, ...], RatScalar]]] = {}
        self._generators: Optional[List[List[ExpVec]]] = None
        self._order_memo: Dict[ExpVec, bool] = {}
        self._mul_memo: Dict[Tuple[ExpVec, ExpVec], Dict[ExpVec, RatScalar]] = {}
        self._bar_memo: Dict[ExpVec, Dict[ExpVec, RatScalar]] = {}
        self._partial_X: Dict[Tuple[int, int], Optional[Dict[ExpVec, RatScalar]]] = {}
        self._partial_mono: Dict[Tuple[int, ExpVec], Dict[ExpVec, RatScalar]] = {}

    # -- basic data ----------------------------------------------------

    def root_vector(self, k: int) -> NcElement:
        """X_k as a tensor-algebra element (1-indexed)."""
        if not 1 <= k <= self.m:
            raise InvalidArgument(f"position {k} out of range")
        if self._root_vectors[k - 1] is None:
            self._root_vectors[k - 1] = braid.root_vector(self.word, k)
        return self._root_vectors[k - 1]

    def degree(self, a: ExpVec) -> Weight:
        return self.word.degree(a)

    def lam(self, a, b) -> int:
        """Lambda(a, b) = sum sign(l-k)(alpha^(k),alpha^(l)) a_k b_l."""
        s = 0
        for k, ak in enumerate(a):
            if not ak:
                continue
            for l, bl in enumerate(b):
                if bl and l != k:
                    sg = 1 if l > k else -1
                    s += sg * self._root_pair[k][l] * ak * bl
        return s

    def q_prefactor(self, a: ExpVec) -> LaurentScalar:
        """q_{i,a} = v^(sum_{k<l}(alpha^(k),alpha^(l)) a_k a_l)."""
        e = 0
        for k in range(self.m):
            if a[k]:
                for l in range(k + 1, self.m):
                    if a[l]:
                        e += self._root_pair[k][l] * a[k] * a[l]
        return LaurentScalar.v_power(e)

    def unit(self, k: int) -> ExpVec:
        return tuple(1 if j == k else 0 for j in range(self.m))

    # -- monomials -----------------------------------------------------

    def pbw_monomial(self, a: ExpVec, kind: str = "plain") -> NcElement:
        """X^a (plain) or the divided-power monomial X^<a>."""
        if any(x < 0 for x in a) or len(a) != self.m:
            raise InvalidArgument("bad exponent vector")
        out = NcElement.one(self.datum)
        for k in range(self.m):
            if a[k]:
                out = out * (self.root_vector(k + 1) ** a[k])
        if kind == "plain":
            return out.scale(RatScalar.from_laurent(self.q_prefactor(a)))
        if kind == "divided":
            # X_k^<n> = v^(-n(eta(alpha^(k)) - d_{i_k})) X_k^n / <n>_{q_{i_k}}!,
            # the unique rescaling dual to the X^a under the twisted form.
            c = RAT_ONE
            for k in range(self.m):
                if a[k]:
                    ik = self.word.letters[k]
                    sc = self.datum.qi_scale(ik)
                    twist = a[k] * (self.datum.eta(self.roots[k]) - self.datum.symmetrizers[ik])
                    c = c * RatScalar.from_laurent(angle_fact(a[k], sc)).inverse() \
                        * RatScalar.v_power(-twist)
            return out.scale(c)
        raise InvalidArgument("kind must be 'plain' or 'divided'")

    def norm_factor(self, a: ExpVec) -> RatScalar:
        """mu(|a|)^-1 <<X^a, X^a>> = prod_r prod_{t=1..a_r} (1 - q_{i_r}^-2t)."""
        out = ONE
        for k in range(self.m):
            s = 2 * self.datum.qi_scale(self.word.letters[k])
            for t in range(1, a[k] + 1):
                out = out * LaurentScalar({0: 1, -s * t: -1})
        return RatScalar.from_laurent(out)

    # -- degree slices -------------------------------------------------

    def slice_vectors(self, gamma: Weight) -> List[ExpVec]:
        """All a >= 0 with sum a_k alpha^(k) = gamma, lexicographic order."""
        out: List[ExpVec] = []
        a = [0] * self.m

        def rec(k: int, rem: Tuple[int, ...]):
            if k == self.m:
                if not any(rem):
                    out.append(tuple(a))
                return
            root = self.roots[k]
            cap = min((r // c for r, c in zip(rem, root) if c), default=0)
            for t in range(cap + 1):
                a[k] = t
                rec(k + 1, tuple(r - t * c for r, c in zip(rem, root)))
            a[k] = 0

        rec(0, gamma)
        return out

    def degrees_up_to_height(self, height: int) -> List[Weight]:
        """All nonzero degrees of the cell with height <= bound, sorted."""
        seen = set()

        def rec(k: int, g: Tuple[int, ...]):
            if any(g):
                seen.add(g)
            if k == self.m:
                return
            root = self.roots[k]
            h = sum(root)
            g2 = g
            while sum(g2) + h <= height:
                g2 = tuple(x + y for x, y in zip(g2, root))
                rec(k + 1, g2)
            rec(k + 1, g)

        rec(0, self.datum.zero())
        return sorted(seen)

    # -- expansion via the dual pairing --------------------------------

    def pbw_expand(self, x: NcElement) -> "PBWVector":
        """Coordinates of x in {X^a}; NotInCell if a residual survives."""
        if x.is_structurally_zero():
            return PBWVector(self, {})
        gamma = x.degree()
        coords: Dict[ExpVec, RatScalar] = {}
        for a in self.slice_vectors(gamma):
            c = pair(x, self.pbw_monomial(a, "divided"))
            if not c.is_zero():
                coords[a] = c
        residual = x
        for a, c in coords.items():
            residual = residual - self.pbw_monomial(a).scale(c)
        if not is_zero(residual):
            raise NotInCell(residual)
        return PBWVector(self, coords)

    # -- straightening -------------------------------------------------

    def straighten(self, k: int, l: int) -> "PBWVector":
        """RHS of the straightening relation for X_l X_k (1-indexed, k < l)."""
        if not 1 <= k < l <= self.m:
            raise InvalidArgument("need 1 <= k < l <= m")
        key = (k - 1, l - 1)
        if key not in self._straight:
            self._straight[key] = self._compute_straight(*key)
        return PBWVector(self, dict(self._straight[key]))

    def _compute_straight(self, k: int, l: int) -> Dict[ExpVec, RatScalar]:
        c = self._root_pair[k][l]
        Xk, Xl = self.root_vector(k + 1), self.root_vector(l + 1)
        z = (Xl * Xk).scale(RatScalar.v_power(-c)) - (Xk * Xl).scale(RatScalar.v_power(c))
        ik = self.word.letters[k]
        s = self.datum.qi_scale(ik)
        z = z.scale(RatScalar.from_laurent(LaurentScalar({s: 1, -s: -1})).inverse())
        vec = self.pbw_expand(z)
        for a, coeff in vec.coords.items():
            if any(a[r] for r in range(self.m) if not k < r < l):
                raise TheoryViolation("straightening support escapes the window")
            if not in_A0(coeff):
                raise IntegralityViolation(f"straightening coefficient {coeff} not in A0")
        return vec.coords

    def _rule(self, k: int, l: int) -> List[Tuple[Tuple[int, ...], RatScalar]]:
        """Rewrite X_l X_k (0-indexed letters, k < l) as ordered words."""
        key = (k, l)
        if key not in self._rewrite_rules:
            c = self._root_pair[k][l]
            ik = self.word.letters[k]
            s = self.datum.qi_scale(ik)
            angle = RatScalar.from_laurent(LaurentScalar({s: 1, -s: -1}))
            terms: List[Tuple[Tuple[int, ...], RatScalar]] = [((k, l), RatScalar.v_power(2 * c))]
            if key not in self._straight:
                self._straight[key] = self._compute_straight(k, l)
            for a, ca in self._straight[key].items():
                wletters = _letters_of(a)
                coeff = RatScalar.v_power(c) * angle * ca * \
                    RatScalar.from_laurent(self.q_prefactor(a))
                terms.append((wletters, coeff))
            self._rewrite_rules[key] = terms
        return self._rewrite_rules[key]

    # -- coordinate algebra --------------------------------------------
    #
    # All products reduce to the memoized one-letter product X^a . X_k,
    # computed by peeling the largest letter of a and applying the
    # straightening rule; identical intermediates merge through the memo,
    # which keeps tall slices polynomial instead of exponential.

    def prod_letter(self, a: ExpVec, k: int) -> Dict[ExpVec, RatScalar]:
        """Coordinates of X^a X_{k+1} (0-indexed letter k)."""
        key = (a, k)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        top = max((r for r in range(self.m) if a[r]), default=-1)
        if top <= k:
            a2 = tuple(x + (1 if r == k else 0) for r, x in enumerate(a))
            ratio = self.q_prefactor(a).divexact(self.q_prefactor(a2))
            out = {a2: RatScalar.from_laurent(ratio)}
        else:
            l = top
            a1 = tuple(x - (1 if r == l else 0) for r, x in enumerate(a))
            pre = RatScalar.from_laurent(
                self.q_prefactor(a).divexact(self.q_prefactor(a1)))
            out = {}
            # X^a X_k = pre * X^a1 (X_l X_k); expand the rule for X_l X_k
            for rep, rc in self._rule(k, l):
                part = {a1: pre * rc}
                for letter in rep:
                    part = self.vec_times_letter(part, letter)
                for a2, c in part.items():
                    s = out.get(a2, RAT_ZERO) + c
                    if s.is_zero():
                        out.pop(a2, None)
                    else:
                        out[a2] = s
        self._mul_memo[key] = out
        return out

    def vec_times_letter(self, coords: Dict[ExpVec, RatScalar], k: int) -> Dict[ExpVec, RatScalar]:
        out: Dict[ExpVec, RatScalar] = {}
        for a, c in coords.items():
            for a2, c2 in self.prod_letter(a, k).items():
                s = out.get(a2, RAT_ZERO) + c * c2
                if s.is_zero():
                    out.pop(a2, None)
                else:
                    out[a2] = s
        return out

    def word_coords(self, word: Tuple[int, ...], coeff: RatScalar) -> Dict[ExpVec, RatScalar]:
        """Coordinates of coeff * X_{w1+1} X_{w2+1} ... (bare product of root vectors)."""
        cur = {(0,) * self.m: coeff}
        for k in word:
            cur = self.vec_times_letter(cur, k)
        return cur

    def mono_mul(self, a: ExpVec, b: ExpVec) -> Dict[ExpVec, RatScalar]:
        """Coordinates of X^a X^b."""
        cur = {a: RatScalar.from_laurent(self.q_prefactor(b))}
        for k in _letters_of(b):
            cur = self.vec_times_letter(cur, k)
        return cur

    def bar_coords(self, a: ExpVec) -> Dict[ExpVec, RatScalar]:
        """Coordinates of bar(X^a) = q_{i,a}^-1 X_m^{a_m} ... X_1^{a_1}."""
        if a not in self._bar_memo:
            coeff = RatScalar.from_laurent(self.q_prefactor(a)).inverse()
            self._bar_memo[a] = self.word_coords(_letters_of(a)[::-1], coeff)
        return self._bar_memo[a]

    def bar_matrix(self, gamma: Weight) -> Dict[ExpVec, Dict[ExpVec, LaurentScalar]]:
        """M with bar(X^a) = sum_{a'} M[a][a'] X^a'; checked unitriangular/A0."""
        slice_ = self.slice_vectors(gamma)
        M: Dict[ExpVec, Dict[ExpVec, LaurentScalar]] = {}
        for a in slice_:
            row = {}
            for a2, c in self.bar_coords(a).items():
                if not in_A0(c):
                    raise IntegralityViolation(f"bar-matrix entry {c} not in A0")
                row[a2] = c.as_laurent()
            if row.get(a) != ONE:
                raise TheoryViolation("bar matrix diagonal is not 1")
            for a2 in row:
                if a2 != a and not self.order_less(a2, a):
                    raise TheoryViolation("bar matrix support not below the diagonal")
            M[a] = row
        return M

    # -- monoid order --------------------------------------------------

    def _monoid_generators(self) -> List[List[ExpVec]]:
        if self._generators is None:
            by_lead: List[List[ExpVec]] = [[] for _ in range(self.m)]
            for k in range(self.m):
                for l in range(k + 2, self.m):
                    if (k, l) not in self._straight:
                        self._straight[(k, l)] = self._compute_straight(k, l)
                    for a in self._straight[(k, l)]:
                        g = tuple((1 if r in (k, l) else 0) - a[r] for r in range(self.m))
                        if g not in by_lead[k]:
                            by_lead[k].append(g)
            self._generators = by_lead
        return self._generators

    def _in_monoid(self, t: ExpVec) -> bool:
        if not any(t):
            return True
        hit = self._order_memo.get(t)
        if hit is not None:
            return hit
        k = next(r for r in range(self.m) if t[r])
        result = False
        if t[k] > 0:
            for g in self._monoid_generators()[k]:
                t2 = tuple(x - y for x, y in zip(t, g))
                if self._in_monoid(t2):
                    result = True
                    break
        self._order_memo[t] = result
        return result

    def order_leq(self, a: ExpVec, a2: ExpVec) -> bool:
        """a <= a' in the straightening-monoid partial order."""
        if a == a2:
            return True
        if self.degree(a) != self.degree(a2):
            return False
        return self._in_monoid(tuple(x - y for x, y in zip(a2, a)))

    def order_less(self, a: ExpVec, a2: ExpVec) -> bool:
        return a != a2 and self.order_leq(a, a2)

    def linear_extension(self, slice_: List[ExpVec]) -> List[ExpVec]:
        """Slice sorted compatibly with the partial order (smaller first)."""
        remaining = sorted(slice_)
        out: List[ExpVec] = []
        while remaining:
            for idx, a in enumerate(remaining):
                if not any(self.order_less(b, a) for b in remaining if b is not a):
                    out.append(a)
                    remaining.pop(idx)
                    break
            else:
                raise TheoryViolation("partial order has a cycle")
        return out

    # -- skew derivations in coordinates -------------------------------

    def partial_X(self, i: int, k: int) -> Optional[Dict[ExpVec, RatScalar]]:
        """Coordinates of d_i(X_k) (1-indexed k), or None if outside the cell."""
        key = (i, k)
        if key not in self._partial_X:
            y = partial(i, "right", self.root_vector(k))
            try:
                self._partial_X[key] = self.pbw_expand(y).coords
            except NotInCell:
                self._partial_X[key] = None
        return self._partial_X[key]

    def partial_mono(self, i: int, a: ExpVec) -> Dict[ExpVec, RatScalar]:
        """Coordinates of d_i(X^a); requires all d_i(X_k) to stay in the cell."""
        key = (i, a)
        if key in self._partial_mono:
            return self._partial_mono[key]
        datum = self.datum
        letters = _letters_of(a)
        degs = [self.roots[k] for k in letters]
        alpha_i = datum.alpha(i)
        pair_pos = [datum.pairing(alpha_i, g) for g in degs]
        total = sum(pair_pos)
        acc: Dict[ExpVec, RatScalar] = {}
        pre = 0
        base = RatScalar.from_laurent(self.q_prefactor(a))
        for p, k in enumerate(letters):
            dX = self.partial_X(i, k + 1)
            if dX is None:
                raise NotInCell()
            if dX:
                suf = total - pre - pair_pos[p]
                twist = RatScalar.v_power(suf - pre) * base
                pcounts = _counts(letters[:p], self.m)
                pref = RatScalar.from_laurent(self.q_prefactor(pcounts)).inverse()
                cur = {pcounts: twist * pref}
                mid: Dict[ExpVec, RatScalar] = {}
                for b, cb in dX.items():
                    part = cur
                    for letter in _letters_of(b):
                        part = self.vec_times_letter(part, letter)
                    cb2 = cb * RatScalar.from_laurent(self.q_prefactor(b))
                    for a2, c in part.items():
                        s = mid.get(a2, RAT_ZERO) + c * cb2
                        if s.is_zero():
                            mid.pop(a2, None)
                        else:
                            mid[a2] = s
                for letter in letters[p + 1:]:
                    mid = self.vec_times_letter(mid, letter)
                for a2, c in mid.items():
                    s = acc.get(a2, RAT_ZERO) + c
                    if s.is_zero():
                        acc.pop(a2, None)
                    else:
                        acc[a2] = s
            pre += pair_pos[p]
        self._partial_mono[key] = acc
        return acc

    def supports_coordinate_partial(self, i: int) -> bool:
        return all(self.partial_X(i, k) is not None for k in range(1, self.m + 1))

    def __repr__(self) -> str:
        w = ",".join(str(i + 1) for i in self.word.letters)
        return f"PBWFrame({self.datum.name or 'custom'}:[{w}])"


def _letters_of(a: ExpVec) -> Tuple[int, ...]:
    out: List[int] = []
    for k, ak in enumerate(a):
        out.extend([k] * ak)
    return tuple(out)


def _counts(w: Tuple[int, ...], m: int) -> ExpVec:
    a = [0] * m
    for k in w:
        a[k] += 1
    return tuple(a)


def _first_descent(w: Tuple[int, ...]) -> Optional[int]:
    for p in range(len(w) - 1):
        if w[p] > w[p + 1]:
            return p
    return None


class PBWVector:
    """An element of the cell in coordinates over {X^a}."""

    __slots__ = ("frame", "coords")

    def __init__(self, frame: PBWFrame, coords: Dict[ExpVec, RatScalar]):
        self.frame = frame
        self.coords = {a: c for a, c in coords.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.coords

    def degree(self) -> Weight:
        degs = {self.frame.degree(a) for a in self.coords}
        if len(degs) > 1:
            raise InvalidArgument("vector is not homogeneous")
        return next(iter(degs)) if degs else self.frame.datum.zero()

    def __add__(self, other: "PBWVector") -> "PBWVector":
        out = dict(self.coords)
        for a, c in other.coords.items():
            s = out.get(a, RAT_ZERO) + c
            if s.is_zero():
                out.pop(a, None)
            else:
                out[a] = s
        return PBWVector(self.frame, out)

    def __neg__(self) -> "PBWVector":
        return PBWVector(self.frame, {a: -c for a, c in self.coords.items()})

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self + (-other)

    def scale(self, c: RatScalar) -> "PBWVector":
        if c.is_zero():
            return PBWVector(self.frame, {})
        return PBWVector(self.frame, {a: c * ca for a, ca in self.coords.items()})

    def __mul__(self, other: "PBWVector") -> "PBWVector":
        out: Dict[ExpVec, RatScalar] = {}
        for a, ca in self.coords.items():
            for b, cb in other.coords.items():
                c = ca * cb
                for a2, c2 in self.frame.mono_mul(a, b).items():
                    s = out.get(a2, RAT_ZERO) + c * c2
                    if s.is_zero():
                        out.pop(a2, None)
                    else:
                        out[a2] = s
        return PBWVector(self.frame, out)

    def __pow__(self, n: int) -> "PBWVector":
        if n < 0:
            raise InvalidArgument("negative power")
        out = PBWVector(self.frame, {(0,) * self.frame.m: RAT_ONE})
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "PBWVector":
        out: Dict[ExpVec, RatScalar] = {}
        for a, c in self.coords.items():
            cb = c.bar()
            for a2, c2 in self.frame.bar_coords(a).items():
                s = out.get(a2, RAT_ZERO) + cb * c2
                if s.is_zero():
                    out.pop(a2, None)
                else:
                    out[a2] = s
        return PBWVector(self.frame, out)

    def partial(self, i: int) -> "PBWVector":
        out: Dict[ExpVec, RatScalar] = {}
        for a, c in self.coords.items():
            for a2, c2 in self.frame.partial_mono(i, a).items():
                s = out.get(a2, RAT_ZERO) + c * c2
                if s.is_zero():
                    out.pop(a2, None)
                else:
                    out[a2] = s
        return PBWVector(self.frame, out)

    def expansion(self) -> NcElement:
        """Expand back to a tensor-algebra representative."""
        out = NcElement.zero(self.frame.datum)
        for a, c in self.coords.items():
            out = out + self.frame.pbw_monomial(a).scale(c)
        return out

    def pair_with(self, other: "PBWVector") -> RatScalar:
        """<<x, y>> computed from PBW orthonormality (no word pairing)."""
        if self.is_zero() or other.is_zero():
            return RAT_ZERO
        gamma = self.degree()
        mu = RatScalar.from_laurent(self.frame.datum.mu(gamma))
        acc = RAT_ZERO
        for a, c in self.coords.items():
            c2 = other.coords.get(a)
            if c2 is not None:
                acc = acc + c * c2 * self.frame.norm_factor(a)
        return acc * mu

    def sorted_coords(self) -> List[Tuple[ExpVec, RatScalar]]:
        return sorted(self.coords.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.frame is other.frame and self.coords == other.coords

    def __repr__(self) -> str:
        inner = " + ".join(f"({c})*X^{list(a)}" for a, c in self.sorted_coords()) or "0"
        return f"PBWVector({inner})"


def lambda_commutator_check(frame: PBWFrame, a: ExpVec, b: ExpVec) -> bool:
    """Verify both q-commutation containments for X^a, X^b."""
    lam = frame.lam(a, b)
    ab = tuple(x + y for x, y in zip(a, b))
    xa_xb = PBWVector(frame, frame.mono_mul(a, b))
    xb_xa = PBWVector(frame, frame.mono_mul(b, a))
    # X^a X^b - q^(-Lambda/2) X^(a+b) in q^(-Lambda/2) * A0-span of lower terms
    first = xa_xb - PBWVector(frame, {ab: RatScalar.v_power(-lam)})
    for a2, c in first.coords.items():
        if not frame.order_less(a2, ab):
            return False
        if not in_A0(c * RatScalar.v_power(lam)):
            return False
    # X^b X^a - q^Lambda X^a X^b in q^(Lambda/2) * A0-span of lower terms
    second = xb_xa - xa_xb.scale(RatScalar.v_power(2 * lam))
    for a2, c in second.coords.items():
        if not frame.order_less(a2, ab):
            return False
        if not in_A0(c * RatScalar.v_power(-lam)):
            return False
    return True


def check_bar_involutive(frame: PBWFrame, gamma: Weight) -> bool:
    """bar(bar(X^a)) = X^a entrywise on the slice: Mbar . M = identity."""
    M = frame.bar_matrix(gamma)
    for a in M:
        acc: Dict[ExpVec, LaurentScalar] = {}
        for a2, c in M[a].items():
            for a3, c2 in M[a2].items():
                acc[a3] = acc.get(a3, LaurentScalar()) + c.bar() * c2
        for a3, c in acc.items():
            expect = ONE if a3 == a else LaurentScalar()
            if c != expect:
                return False
    return True
