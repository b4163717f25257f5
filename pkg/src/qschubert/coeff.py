"""Exact arithmetic in Z[v, v^-1] and its fraction field, v = q^(1/2).

All scalars in the library live here.  LaurentScalar is a sparse Laurent
polynomial with arbitrary-precision integer coefficients and integer
v-exponents; every half-integer q-power q^(m/2) appearing in formulas is the
monomial v^m.  RatScalar is a reduced fraction of two LaurentScalars with a
canonical denominator, giving decidable equality in Q(v).

The q-combinatorics used throughout (balanced quantum integers <n>_v,
symmetric quantum integers (n)_v, factorials, generalized binomials and
one-sided Gaussian binomials) are provided as module functions.  Evaluation
"in the variable q_i" is realized by the exponent substitution v -> v^(2*d_i),
passed as the ``scale`` argument (scale=1 is plain v).
"""

from __future__ import annotations

from math import gcd
from typing import Iterable

from .errors import DivisionByZero, InvalidArgument, NotALaurentPolynomial


class LaurentScalar:
    """Sparse Laurent polynomial in v over Z.  Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                c = t.get(e, 0) + c
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        self._terms = t
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "LaurentScalar":
        return cls({0: n} if n else {})

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "LaurentScalar":
        return cls({e: coeff} if coeff else {})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def min_exp(self) -> int:
        if not self._terms:
            raise InvalidArgument("zero polynomial has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise InvalidArgument("zero polynomial has no exponents")
        return max(self._terms)

    def leading_coeff(self) -> int:
        return self._terms[self.max_exp()]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, abs(c))
        return g

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        t = dict(self._terms)
        for e, c in other._terms.items():
            c = t.get(e, 0) + c
            if c:
                t[e] = c
            else:
                t.pop(e, None)
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = t
        out._hash = None
        return out

    def __neg__(self) -> "LaurentScalar":
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {e: -c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                c = t.get(e, 0) + c1 * c2
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = t
        out._hash = None
        return out

    def scalar_mul(self, n: int) -> "LaurentScalar":
        if n == 0:
            return LaurentScalar()
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {e: n * c for e, c in self._terms.items()}
        out._hash = None
        return out

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by v^k."""
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {e + k: c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            raise InvalidArgument("negative power of a Laurent polynomial")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "LaurentScalar":
        """The substitution v -> v^-1."""
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {-e: c for e, c in self._terms.items()}
        out._hash = None
        return out

    def subst(self, s: int) -> "LaurentScalar":
        """The substitution v -> v^s (s any nonzero integer)."""
        if s == 0:
            raise InvalidArgument("substitution exponent must be nonzero")
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {e * s: c for e, c in self._terms.items()}
        out._hash = None
        return out

    def divexact(self, other: "LaurentScalar") -> "LaurentScalar":
        """Exact division; raises if ``other`` does not divide ``self``."""
        if other.is_zero():
            raise DivisionByZero("division by zero polynomial")
        if self.is_zero():
            return ZERO
        off_s, num = _to_dense(self)
        off_o, den = _to_dense(other)
        quo = _dense_divexact(num, den)
        return _from_dense(off_s - off_o, quo)

    # -- protocol -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*v" if abs(c) != 1 else ("v" if c > 0 else "-v"))
            else:
                parts.append(f"{c}*v^{e}" if abs(c) != 1 else (f"v^{e}" if c > 0 else f"-v^{e}"))
        s = parts[0]
        for p in parts[1:]:
            s += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return s

    def to_json(self):
        return [[e, self._terms[e]] for e in sorted(self._terms)]

    @classmethod
    def from_json(cls, data) -> "LaurentScalar":
        return cls({int(e): int(c) for e, c in data})


ZERO = LaurentScalar()
ONE = LaurentScalar.from_int(1)


def _to_dense(p: LaurentScalar):
    """Return (offset, ascending coefficient list) with offset = min exponent."""
    off = p.min_exp()
    top = p.max_exp()
    dense = [0] * (top - off + 1)
    for e, c in p._terms.items():
        dense[e - off] = c
    return off, dense


def _from_dense(off: int, dense: list) -> LaurentScalar:
    return LaurentScalar({off + k: c for k, c in enumerate(dense) if c})


def _dense_divexact(num: list, den: list) -> list:
    """Exact polynomial division of dense ascending coefficient lists."""
    num = list(num)
    dn = len(den) - 1
    while den[dn] == 0:
        dn -= 1
    lead = den[dn]
    if len(num) - 1 < dn:
        raise NotALaurentPolynomial("division is not exact")
    quo = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c == 0:
            continue
        if c % lead != 0:
            raise NotALaurentPolynomial("division is not exact")
        q = c // lead
        quo[k - dn] = q
        for j in range(dn + 1):
            num[k - dn + j] -= q * den[j]
    if any(num[:dn]):
        raise NotALaurentPolynomial("division is not exact")
    return quo


def _dense_primitive(p: list) -> list:
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    if g == 0:
        return []
    out = [c // g for c in p]
    k = len(out) - 1
    while out[k] == 0:
        k -= 1
    out = out[: k + 1]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _dense_prem(a: list, b: list) -> list:
    """Pseudo-remainder of dense ascending polynomials (b nonzero)."""
    a = list(a)
    db = len(b) - 1
    lead = b[db]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db or not a:
            break
        da = len(a) - 1
        c = a[da]
        a = [x * lead for x in a]
        for j in range(db + 1):
            a[da - db + j] -= c * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd(p: LaurentScalar, q: LaurentScalar) -> LaurentScalar:
    """Primitive gcd in Z[v] up to units v^k (returned with min exponent 0)."""
    if p.is_zero():
        base = q
        if base.is_zero():
            return ZERO
        _, d = _to_dense(base)
        return _from_dense(0, _dense_primitive(d))
    if q.is_zero():
        _, d = _to_dense(p)
        return _from_dense(0, _dense_primitive(d))
    _, a = _to_dense(p)
    _, b = _to_dense(q)
    a = _dense_primitive(a)
    b = _dense_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _dense_prem(a, b)
        a, b = b, _dense_primitive(r)
    return _from_dense(0, a)


class RatScalar:
    """Reduced fraction num/den of Laurent polynomials.  Immutable.

    Canonical form: no common polynomial factor, gcd of integer contents 1,
    denominator with min v-exponent 0 and positive leading coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentScalar, den: LaurentScalar = ONE, _reduced=False):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, n: int) -> "RatScalar":
        return cls(LaurentScalar.from_int(n), ONE, _reduced=True)

    @classmethod
    def from_laurent(cls, p: LaurentScalar) -> "RatScalar":
        return cls(p, ONE, _reduced=True)

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "RatScalar":
        return cls(LaurentScalar.v_power(e, coeff), ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __add__(self, other: "RatScalar") -> "RatScalar":
        if self.den == other.den:
            return RatScalar(self.num + other.num, self.den)
        return RatScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatScalar") -> "RatScalar":
        if self.den == other.den:
            return RatScalar(self.num - other.num, self.den)
        return RatScalar(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatScalar":
        return RatScalar(-self.num, self.den, _reduced=True)

    def __mul__(self, other: "RatScalar") -> "RatScalar":
        return RatScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatScalar") -> "RatScalar":
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return RatScalar(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatScalar(self.den, self.num)

    def __pow__(self, n: int) -> "RatScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = RAT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "RatScalar":
        return RatScalar(self.num.bar(), self.den.bar())

    def as_laurent(self) -> LaurentScalar:
        if not self.den.is_one():
            raise NotALaurentPolynomial(f"denominator {self.den} is nontrivial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatScalar.from_int(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatScalar({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatScalar":
        return cls(LaurentScalar.from_json(data["num"]), LaurentScalar.from_json(data["den"]))


RAT_ZERO = RatScalar.from_int(0)
RAT_ONE = RatScalar.from_int(1)


def _reduce(num: LaurentScalar, den: LaurentScalar):
    if num.is_zero():
        return ZERO, ONE
    g = _poly_gcd(num, den)
    if not (g.is_monomial() and g.leading_coeff() == 1):
        num = num.divexact(g)
        den = den.divexact(g)
    cg = gcd(num.content(), den.content())
    if cg > 1:
        num = LaurentScalar({e: c // cg for e, c in num._terms.items()})
        den = LaurentScalar({e: c // cg for e, c in den._terms.items()})
    s = den.min_exp()
    if s:
        num = num.shift(-s)
        den = den.shift(-s)
    if den.leading_coeff() < 0:
        num, den = -num, -den
    return num, den


# ----------------------------------------------------------------------
# q-combinatorics.  ``scale`` is the exponent substitution v -> v^scale;
# the q_i-versions use scale = 2*d_i.
# ----------------------------------------------------------------------


def angle_int(n: int, scale: int = 1) -> LaurentScalar:
    """Balanced quantum integer <n>_v = v^n - v^-n."""
    if n == 0:
        return ZERO
    return LaurentScalar({n * scale: 1, -n * scale: -1})


def round_int(n: int, scale: int = 1) -> LaurentScalar:
    """Symmetric quantum integer (n)_v = <n>_v / <1>_v, any integer n."""
    sign = 1
    if n < 0:
        sign, n = -1, -n
    terms = {}
    for t in range(n):
        terms[(n - 1 - 2 * t) * scale] = sign
    return LaurentScalar(terms)


def angle_fact(n: int, scale: int = 1) -> LaurentScalar:
    """Balanced factorial <n>_v! = prod_{t=1..n} <t>_v."""
    if n < 0:
        raise InvalidArgument("factorial of negative integer")
    out = ONE
    for t in range(1, n + 1):
        out = out * angle_int(t, scale)
    return out


def round_fact(n: int, scale: int = 1) -> LaurentScalar:
    """Symmetric factorial (n)_v! = prod_{t=1..n} (t)_v."""
    if n < 0:
        raise InvalidArgument("factorial of negative integer")
    out = ONE
    for t in range(1, n + 1):
        out = out * round_int(t, scale)
    return out


def binom(n: int, k: int, scale: int = 1) -> LaurentScalar:
    """Generalized quantum binomial: prod_{t=0..k-1}(n-t)_v / (k)_v!."""
    if k < 0:
        raise InvalidArgument("binomial lower index must be nonnegative")
    num = ONE
    for t in range(k):
        f = round_int(n - t, scale)
        if f.is_zero():
            return ZERO
        num = num * f
    return num.divexact(round_fact(k, scale))


def gauss_binom(m: int, n: int, scale: int = 1) -> LaurentScalar:
    """One-sided Gaussian binomial with [k]_v = sum_{l=0..k-1} v^l."""
    if n < 0 or m < 0 or n > m:
        raise InvalidArgument("Gaussian binomial requires 0 <= n <= m")
    out = ONE
    for t in range(n):
        out = out * _one_sided(m - t, scale)
        out = out.divexact(_one_sided(t + 1, scale))
    return out


def _one_sided(k: int, scale: int) -> LaurentScalar:
    return LaurentScalar({l * scale: 1 for l in range(k)})


# ----------------------------------------------------------------------
# Subring membership
# ----------------------------------------------------------------------


def in_A(a: RatScalar) -> bool:
    """Membership in A = Z[v, v^-1]."""
    return a.den.is_one()


def in_A0(a: RatScalar) -> bool:
    """Membership in A0 = Z[q, q^-1]: integral with even v-exponents."""
    return a.den.is_one() and all(e % 2 == 0 for e in a.num._terms)


def in_Kminus(a: RatScalar) -> bool:
    """Membership in q^-1 Z[q^-1]: integral, even v-exponents <= -2."""
    return a.den.is_one() and all(e % 2 == 0 and e <= -2 for e in a.num._terms)


def in_one_plus_Kminus(a: RatScalar) -> bool:
    return in_Kminus(a - RAT_ONE)


MEMBERSHIP = {"A": in_A, "A0": in_A0, "Kminus": in_Kminus, "one_plus_Kminus": in_one_plus_Kminus}


def membership(a: RatScalar, subset: str) -> bool:
    try:
        return MEMBERSHIP[subset](a)
    except KeyError:
        raise InvalidArgument(f"unknown subset {subset!r}") from None


Q_COMBINATORICS = {
    "angle_int": angle_int,
    "round_int": round_int,
    "angle_fact": angle_fact,
    "round_fact": round_fact,
    "binom": binom,
    "gauss_binom": gauss_binom,
}


def q_combinatorics(kind: str, args: Iterable[int], scale: int = 1) -> LaurentScalar:
    try:
        fn = Q_COMBINATORICS[kind]
    except KeyError:
        raise InvalidArgument(f"unknown kind {kind!r}") from None
    return fn(*args, scale)
