"""Substitutions (monoid endomorphisms a -> word) and their structural properties."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInput, NotApplicable, ResourceLimit
from .language import FactorSet, complexity, rauzy_graph
from .words import Alphabet, Word, tokenize

DEFAULT_BUFFER_CAP = 5_000_000


@dataclass(frozen=True)
class Substitution:
    alphabet: Alphabet
    images: tuple  # images[a] is the word phi(a)

    def __post_init__(self):
        images = tuple(tuple(w) for w in self.images)
        if len(images) != self.alphabet.size:
            raise InvalidInput("one image per alphabet letter is required")
        for a, w in enumerate(images):
            if not w:
                raise InvalidInput(f"image of {self.alphabet.symbols[a]!r} is empty")
            self.alphabet.check_word(w)
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        """Parse ``"a->ab; b->a"``; the alphabet is ordered by rule appearance."""
        rules = []
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            if "->" not in chunk:
                raise InvalidInput(f"rule {chunk.strip()!r} lacks '->'")
            lhs, rhs = chunk.split("->", 1)
            src = tokenize(lhs)
            if len(src) != 1:
                raise InvalidInput(f"rule {chunk.strip()!r}: left side must be one letter")
            rules.append((src[0], tokenize(rhs)))
        if not rules:
            raise InvalidInput("no rules given")
        names = [s for s, _ in rules]
        if len(set(names)) != len(names):
            raise InvalidInput("letter defined twice")
        alphabet = Alphabet.of(names)
        return cls(alphabet, tuple(alphabet.word(rhs) for _, rhs in rules))

    @classmethod
    def from_json(cls, data: dict) -> "Substitution":
        alphabet = Alphabet.of(data["alphabet"])
        images = []
        for name in alphabet.symbols:
            img = data["images"][name]
            images.append(alphabet.word(img))
        return cls(alphabet, tuple(images))

    def to_json(self) -> dict:
        sym = self.alphabet.symbols
        return {
            "alphabet": list(sym),
            "images": {sym[a]: [sym[b] for b in w] for a, w in enumerate(self.images)},
        }

    def rules(self) -> str:
        enc = self.alphabet.encode
        return "; ".join(f"{enc((a,))}->{enc(w)}" for a, w in enumerate(self.images))

    def __str__(self):
        return self.rules()

    def __call__(self, w) -> Word:
        return apply(self, w)

    def compose(self, other: "Substitution") -> "Substitution":
        """``self ∘ other``: first ``other``, then ``self``."""
        if other.alphabet != self.alphabet:
            raise InvalidInput("alphabets differ")
        return Substitution(self.alphabet, tuple(apply(self, w) for w in other.images))

    def power(self, k: int) -> "Substitution":
        result = Substitution(self.alphabet, tuple((a,) for a in self.alphabet))
        for _ in range(k):
            result = self.compose(result)
        return result

    def relabel(self, symbols) -> "Substitution":
        return Substitution(Alphabet.of(symbols), self.images)


def apply(phi: Substitution, w) -> Word:
    out = []
    n = phi.alphabet.size
    for a in w:
        if not (isinstance(a, int) and 0 <= a < n):
            raise InvalidInput(f"letter {a!r} outside alphabet of size {n}")
        out.extend(phi.images[a])
    return tuple(out)


def iterate(phi: Substitution, w, k: int) -> Word:
    for _ in range(k):
        w = apply(phi, w)
    return tuple(w)


# -- incidence matrix ---------------------------------------------------------

def incidence_matrix(phi: Substitution) -> list:
    """Entry [a][b] = number of occurrences of a in phi(b)."""
    n = phi.alphabet.size
    m = [[0] * n for _ in range(n)]
    for b, img in enumerate(phi.images):
        for a in img:
            m[a][b] += 1
    return m


def mat_mul(x, y, mod=None):
    n, k, m = len(x), len(y), len(y[0])
    out = [[sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)] for i in range(n)]
    if mod is not None:
        out = [[v % mod for v in row] for row in out]
    return out


def determinant(matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise InvalidInput("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- primitivity, properness, stability --------------------------------------

@dataclass(frozen=True)
class Primitivity:
    primitive: bool
    witness_exponent: Optional[int] = None


def _positive_power_exponent(m) -> Optional[int]:
    n = len(m)
    bound = (n - 1) ** 2 + 1
    pattern = [[1 if v else 0 for v in row] for row in m]
    power = pattern
    for e in range(1, bound + 1):
        if all(v for row in power for v in row):
            return e
        power = [[1 if any(power[i][t] and pattern[t][j] for t in range(n)) else 0
                  for j in range(n)] for i in range(n)]
    return None


def is_primitive(phi: Substitution) -> Primitivity:
    """Least exponent e with M^e > 0, searched up to the Wielandt bound (n-1)^2+1."""
    if phi.alphabet.size < 2:
        raise NotApplicable("primitivity needs an alphabet with at least two letters")
    e = _positive_power_exponent(incidence_matrix(phi))
    return Primitivity(e is not None, e)


@dataclass(frozen=True)
class Properness:
    proper: bool
    first: Optional[int] = None
    last: Optional[int] = None


def is_proper(phi: Substitution) -> Properness:
    firsts = {w[0] for w in phi.images}
    lasts = {w[-1] for w in phi.images}
    if len(firsts) == 1 and len(lasts) == 1:
        return Properness(True, firsts.pop(), lasts.pop())
    return Properness(False)


@dataclass(frozen=True)
class BoundaryMaps:
    """Letter maps a -> first/last letter of phi(a), and the eventual period of
    k -> (last^k, first^k).

    ``preperiod`` q and ``period`` p are minimal with
    ``(last^(q+p), first^(q+p)) == (last^(q+2p), first^(q+2p))``.
    """

    first: tuple
    last: tuple
    preperiod: int
    period: int

    def first_power(self, k: int) -> tuple:
        return _map_power(self.first, k)

    def last_power(self, k: int) -> tuple:
        return _map_power(self.last, k)


def _map_power(f, k):
    g = tuple(range(len(f)))
    for _ in range(k):
        g = tuple(f[x] for x in g)
    return g


def boundary_maps(phi: Substitution) -> BoundaryMaps:
    first = tuple(w[0] for w in phi.images)
    last = tuple(w[-1] for w in phi.images)
    ident = tuple(range(phi.alphabet.size))
    seen = {}
    state, k = (ident, ident), 0
    while state not in seen:
        seen[state] = k
        state = (tuple(last[x] for x in state[0]), tuple(first[x] for x in state[1]))
        k += 1
    onset = seen[state]
    period = k - onset
    return BoundaryMaps(first, last, max(0, onset - period), period)


def two_factors(phi: Substitution) -> frozenset:
    """Length-2 factors of F_phi: closure of 2-factors of images under phi."""
    found = set()
    for img in phi.images:
        found.update(img[i : i + 2] for i in range(len(img) - 1))
    frontier = list(found)
    while frontier:
        nxt = []
        for w in frontier:
            img = apply(phi, w)
            for i in range(len(img) - 1):
                u = img[i : i + 2]
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(found)


@dataclass(frozen=True)
class Stability:
    stable: bool
    witness_k: Optional[int]
    window: tuple  # (first k tested, last k tested)
    note: str = "derived bound"


def is_stable(phi: Substitution, F2=None) -> Stability:
    """Stable iff for some k, last^k(a) first^k(b) is a factor for all letters a, b.

    The condition is monotone in k and the boundary maps are eventually
    periodic, so k = 1 .. q+p is an exhaustive window.
    """
    _require_primitive(phi)
    F2 = two_factors(phi) if F2 is None else {tuple(w) for w in F2}
    bm = boundary_maps(phi)
    hi = bm.preperiod + bm.period
    letters = range(phi.alphabet.size)
    for k in range(1, hi + 1):
        lk, fk = bm.last_power(k), bm.first_power(k)
        if all((lk[a], fk[b]) in F2 for a in letters for b in letters):
            return Stability(True, k, (1, hi))
    return Stability(False, None, (1, hi))


def _require_primitive(phi: Substitution):
    if phi.alphabet.size == 1:
        if len(phi.images[0]) < 2:
            raise NotApplicable("single-letter substitution a -> a generates no language growth")
        return
    if not is_primitive(phi).primitive:
        raise NotApplicable(f"substitution {phi} is not primitive")


# -- factor language ------------------------------------------------------------

def factor_language(phi: Substitution, L: int, buffer_cap: int = DEFAULT_BUFFER_CAP) -> FactorSet:
    """Exactly the factors of F_phi of length <= L.

    Every length-L factor of a long iterate lies inside phi^j(xy) for some
    2-factor xy once all blocks phi^j(c) have length >= L-1, so those words
    (plus the letters) carry the whole window.
    """
    if L < 1:
        raise InvalidInput("L must be positive")
    _require_primitive(phi)
    n = phi.alphabet.size
    F2 = sorted(two_factors(phi))
    lengths = [1] * n
    j = 0
    while min(lengths) < L - 1:
        lengths = [sum(lengths[c] for c in img) for img in phi.images]
        j += 1
    need = sum(lengths) + sum(lengths[x] + lengths[y] for x, y in F2)
    if need > buffer_cap:
        smaller = L
        while smaller > 1:
            smaller //= 2
            try:
                partial = factor_language(phi, smaller, buffer_cap)
                break
            except ResourceLimit:
                continue
        else:
            partial = None
        raise ResourceLimit(
            f"factor window L={L} needs {need} buffered letters (cap {buffer_cap})",
            partial=partial,
        )
    blocks = [iterate(phi, (c,), j) for c in range(n)]
    top = set()
    for w in blocks:
        top.update(w[i : i + L] for i in range(len(w) - L + 1))
    for x, y in F2:
        w = blocks[x][len(blocks[x]) - (L - 1):] + blocks[y][: L - 1]
        top.update(w[i : i + L] for i in range(len(w) - L + 1))
    # F_phi is prolongable, so every shorter factor is a prefix of a length-L one
    levels = [()] * (L + 1)
    levels[L] = tuple(sorted(top))
    for k in range(L - 1, -1, -1):
        levels[k] = tuple(sorted({w[:k] for w in levels[k + 1]}))
    return FactorSet(phi.alphabet, L, tuple(levels))


# -- periodicity ----------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicityVerdict:
    kind: str  # "Periodic" | "AperiodicUpTo" | "AssertedAperiodic"
    period: Optional[int] = None
    bound: Optional[int] = None
    period_word: Optional[Word] = None

    def __str__(self):
        if self.kind == "Periodic":
            return f"Periodic({self.period})"
        if self.kind == "AperiodicUpTo":
            return f"AperiodicUpTo({self.bound})"
        return "AssertedAperiodic"

    @property
    def periodic(self) -> bool:
        return self.kind == "Periodic"


ASSERTED_APERIODIC = PeriodicityVerdict("AssertedAperiodic")


def periodicity(F: FactorSet, assert_aperiodic: bool = False) -> PeriodicityVerdict:
    """Complexity-plateau test: p(k+1) = p(k) for some 1 <= k < L means periodic.

    The period is read off the order-k Rauzy graph, which is a single cycle
    for a uniformly recurrent periodic language.
    """
    if assert_aperiodic:
        return ASSERTED_APERIODIC
    for k in range(1, F.max_length):
        if complexity(F, k) and complexity(F, k + 1) == complexity(F, k):
            g = rauzy_graph(F, k)
            succ = {}
            for u, v, _ in g.edges:
                succ.setdefault(u, []).append(v)
            if all(len(succ.get(u, ())) == 1 for u in g.vertices):
                start = g.vertices[0]
                word, u = [], start
                while True:
                    word.append(u[0])
                    u = succ[u][0]
                    if u == start:
                        break
                if len(word) == len(g.vertices):
                    return PeriodicityVerdict("Periodic", period=len(word), period_word=tuple(word))
            return PeriodicityVerdict("Periodic", period=complexity(F, k))
    return PeriodicityVerdict("AperiodicUpTo", bound=F.max_length)


