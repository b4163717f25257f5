"""Symmetrizable Cartan data, the weight-lattice form, and reduced words.

Weights are plain integer tuples over the node set (elements of Q = Z^I);
all structure maps (pairing, reflections, mu, sgn) live on RootDatum.
Nodes are 0-indexed internally; the CLI accepts 1-indexed words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

from .coeff import LaurentScalar
from .errors import InvalidArgument, NotReduced

Weight = Tuple[int, ...]


class RootDatum:
    """Symmetrizable generalized Cartan matrix with symmetrizers d_i."""

    __slots__ = ("rank", "gcm", "symmetrizers", "name", "_pair_memo")

    def __init__(self, gcm: Sequence[Sequence[int]], symmetrizers: Sequence[int], name: str = ""):
        gcm = tuple(tuple(int(x) for x in row) for row in gcm)
        d = tuple(int(x) for x in symmetrizers)
        n = len(gcm)
        if any(len(row) != n for row in gcm) or len(d) != n or n == 0:
            raise InvalidArgument("Cartan matrix must be square with matching symmetrizers")
        for i in range(n):
            if gcm[i][i] != 2:
                raise InvalidArgument("diagonal entries must equal 2")
            if d[i] <= 0:
                raise InvalidArgument("symmetrizers must be positive")
            for j in range(n):
                if i != j:
                    if gcm[i][j] > 0:
                        raise InvalidArgument("off-diagonal entries must be nonpositive")
                    if (gcm[i][j] == 0) != (gcm[j][i] == 0):
                        raise InvalidArgument("zero pattern must be symmetric")
                if d[i] * gcm[i][j] != d[j] * gcm[j][i]:
                    raise InvalidArgument("matrix is not symmetrizable by the given d_i")
        self.rank = n
        self.gcm = gcm
        self.symmetrizers = d
        self.name = name
        self._pair_memo = {}  # word-pairing memo, owned by freealg

    # -- weights ------------------------------------------------------

    def zero(self) -> Weight:
        return (0,) * self.rank

    def alpha(self, i: int) -> Weight:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def add(self, g1: Weight, g2: Weight) -> Weight:
        return tuple(a + b for a, b in zip(g1, g2))

    def sub(self, g1: Weight, g2: Weight) -> Weight:
        return tuple(a - b for a, b in zip(g1, g2))

    def height(self, g: Weight) -> int:
        return sum(g)

    def is_positive(self, g: Weight) -> bool:
        return all(c >= 0 for c in g) and any(c > 0 for c in g)

    def pairing(self, g1: Weight, g2: Weight) -> int:
        """(gamma, gamma') with (alpha_i, alpha_j) = d_i a_ij."""
        s = 0
        for i, c1 in enumerate(g1):
            if c1:
                di = self.symmetrizers[i]
                row = self.gcm[i]
                s += c1 * di * sum(row[j] * c2 for j, c2 in enumerate(g2) if c2)
        return s

    def covector(self, i: int, g: Weight) -> int:
        """(alpha_i^vee, gamma) = (alpha_i, gamma) / d_i."""
        return sum(self.gcm[i][j] * c for j, c in enumerate(g) if c)

    def eta(self, g: Weight) -> int:
        return sum(c * d for c, d in zip(g, self.symmetrizers))

    def mu(self, g: Weight) -> LaurentScalar:
        """mu(gamma) = v^((gamma,gamma)/2 + eta(gamma)), a single monomial."""
        p = self.pairing(g, g)
        if p % 2:
            raise InvalidArgument("(gamma,gamma) must be even")
        return LaurentScalar.v_power(p // 2 + self.eta(g))

    def sgn(self, g: Weight) -> int:
        return -1 if self.height(g) % 2 else 1

    def reflect(self, i: int, g: Weight) -> Weight:
        c = self.covector(i, g)
        return tuple(x - c if j == i else x for j, x in enumerate(g))

    def qi_scale(self, i: int) -> int:
        """Exponent substitution realizing the variable q_i = v^(2 d_i)."""
        return 2 * self.symmetrizers[i]

    def __repr__(self) -> str:
        return f"RootDatum({self.name or self.gcm})"

    def to_json(self):
        return {
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.gcm],
            "symmetrizers": list(self.symmetrizers),
        }

    @classmethod
    def from_json(cls, data) -> "RootDatum":
        return cls(data["cartan_matrix"], data["symmetrizers"], data.get("name", ""))


_PRESETS = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "B2": ([[2, -1], [-2, 2]], [2, 1]),
    "C2": ([[2, -2], [-1, 2]], [1, 2]),
    "G2": ([[2, -3], [-1, 2]], [1, 3]),
}


def preset(name: str) -> RootDatum:
    try:
        gcm, d = _PRESETS[name]
    except KeyError:
        raise InvalidArgument(f"unknown preset {name!r}") from None
    return RootDatum(gcm, d, name)


PRESET_NAMES = tuple(sorted(_PRESETS))


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word with its cached sequence of positive roots alpha^(k)."""

    datum: RootDatum
    letters: Tuple[int, ...]
    roots: Tuple[Weight, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", _partial_roots(self.datum, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def degree(self, a: Sequence[int]) -> Weight:
        """|a| = sum a_k alpha^(k) for an exponent vector a."""
        g = [0] * self.datum.rank
        for ak, root in zip(a, self.roots):
            if ak:
                for j, c in enumerate(root):
                    g[j] += ak * c
        return tuple(g)

    def action(self, g: Weight) -> Weight:
        """Apply w = s_{i_1} ... s_{i_m} to a weight."""
        for i in reversed(self.letters):
            g = self.datum.reflect(i, g)
        return g

    def inverse_action(self, g: Weight) -> Weight:
        for i in self.letters:
            g = self.datum.reflect(i, g)
        return g


def _partial_roots(datum: RootDatum, letters: Sequence[int]) -> Tuple[Weight, ...]:
    roots = []
    for k, ik in enumerate(letters):
        if not 0 <= ik < datum.rank:
            raise InvalidArgument(f"letter {ik} out of range")
        g = datum.alpha(ik)
        for i in reversed(letters[:k]):
            g = datum.reflect(i, g)
        if not datum.is_positive(g):
            raise NotReduced(k + 1)
        roots.append(g)
    return tuple(roots)


def make_reduced_word(datum: RootDatum, letters: Sequence[int]) -> ReducedWord:
    return ReducedWord(datum, tuple(int(x) for x in letters))


def length_additive(w: ReducedWord, w2: ReducedWord) -> bool:
    """True iff the concatenation w . w2 is again reduced."""
    if w.datum is not w2.datum and w.datum.to_json() != w2.datum.to_json():
        raise InvalidArgument("words over different data")
    try:
        make_reduced_word(w.datum, w.letters + w2.letters)
        return True
    except NotReduced:
        return False
