"""Finite codes and their completeness relative to a factor window."""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInput, NotInStar, ResourceLimit
from .language import FactorSet, is_recurrent_up_to
from .words import Alphabet, Word, reverse, shortlex_key, tokenize


@dataclass(frozen=True)
class FiniteCode:
    alphabet: Alphabet
    words: tuple  # sorted in length-then-lexicographic order

    def __post_init__(self):
        words = {self.alphabet.check_word(tuple(w)) for w in self.words}
        if not words:
            raise InvalidInput("a code must be nonempty")
        if () in words:
            raise InvalidInput("the empty word cannot belong to a code")
        object.__setattr__(self, "words", tuple(sorted(words, key=shortlex_key)))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "FiniteCode":
        """Comma-separated word list, e.g. ``"aa,ab,ba"``."""
        items = [s.strip() for s in text.split(",")]
        if any(not s for s in items):
            raise InvalidInput(f"empty word in code list {text!r}")
        return cls(alphabet, tuple(alphabet.word(s) for s in items))

    @classmethod
    def of(cls, alphabet: Alphabet, words) -> "FiniteCode":
        return cls(alphabet, tuple(alphabet.word(w) for w in words))

    def __contains__(self, w) -> bool:
        return tuple(w) in set(self.words)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    @property
    def max_length(self) -> int:
        return max(len(w) for w in self.words)

    def reversed(self) -> "FiniteCode":
        return FiniteCode(self.alphabet, tuple(reverse(w) for w in self.words))

    def show(self) -> list:
        return [self.alphabet.show(w) for w in self.words]

    def to_json(self) -> list:
        return self.show()


@dataclass(frozen=True)
class PowerCode:
    """The uniform code A^n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("A^n needs n >= 1")

    def __str__(self):
        return f"A^{self.n}"

    def words(self, alphabet: Alphabet) -> FiniteCode:
        from itertools import product

        return FiniteCode(alphabet, tuple(product(range(alphabet.size), repeat=self.n)))


def parse_code_spec(text: str, alphabet: Alphabet):
    """``A^n`` gives a PowerCode, anything else a FiniteCode word list."""
    t = text.strip()
    if t.startswith("A^"):
        try:
            return PowerCode(int(t[2:]))
        except ValueError:
            raise InvalidInput(f"bad power code {text!r}") from None
    return FiniteCode.parse(t, alphabet)


# -- classification --------------------------------------------------------------

@dataclass(frozen=True)
class CodeFlags:
    is_code: bool
    is_prefix: bool
    is_suffix: bool
    is_bifix: bool
    counterexample: Optional[tuple] = None  # (word, parse1, parse2)


def _prefix_free(words) -> bool:
    ws = sorted(words)
    # in lexicographic order a prefix sorts immediately before some extension
    return all(ws[i + 1][: len(ws[i])] != ws[i] for i in range(len(ws) - 1))


def double_factorization(X: FiniteCode) -> Optional[tuple]:
    """Sardinas–Patterson search returning a word with two X-factorizations.

    Each search state records the dangling suffix together with the two
    partial parses that produced it; reaching an empty dangling suffix closes
    both parses on the same word.
    """
    words = X.words
    start = []
    for x in words:
        for y in words:
            if x != y and y[: len(x)] == x:
                start.append((y[len(x):], (y,), (x,)))
    seen = set()
    queue = deque()
    for s, ahead, behind in start:
        if s not in seen:
            seen.add(s)
            queue.append((s, ahead, behind))
    while queue:
        s, ahead, behind = queue.popleft()
        for z in words:
            if z == s:
                return (sum(ahead, ()), ahead, behind + (z,))
            if s[: len(z)] == z:
                nxt = (s[len(z):], ahead, behind + (z,))
            elif z[: len(s)] == s:
                nxt = (z[len(s):], behind + (z,), ahead)
            else:
                continue
            if nxt[0] not in seen:
                seen.add(nxt[0])
                queue.append(nxt)
    return None


def classify_code(X: FiniteCode) -> CodeFlags:
    prefix = _prefix_free(X.words)
    suffix = _prefix_free([reverse(w) for w in X.words])
    witness = None if prefix or suffix else double_factorization(X)
    return CodeFlags(witness is None, prefix, suffix, prefix and suffix, witness)


# -- completeness ------------------------------------------------------------------

@dataclass(frozen=True)
class CompletenessVerdict:
    holds: bool
    bound: int
    counterexample: Optional[Word] = None

    def describe(self, alphabet: Alphabet) -> str:
        if self.holds:
            return f"HoldsUpTo({self.bound})"
        return f"Fails({alphabet.show(self.counterexample)})"


class _StarPrefixAutomaton:
    """Trie of X with restart edges; a word stays alive iff it is a prefix of X^*."""

    def __init__(self, words):
        self.codewords = set(words)
        self.proper = {w[:i] for w in words for i in range(len(w))}
        self.start = frozenset([()])

    def step(self, state, a):
        out = set()
        for p in state:
            q = p + (a,)
            if q in self.proper:
                out.add(q)
            if q in self.codewords:
                out.add(())
        return frozenset(out)


def _complete_side(words, F: FactorSet, flip: bool) -> CompletenessVerdict:
    auto = _StarPrefixAutomaton(words)
    states = {(): auto.start}
    for k in range(1, F.max_length + 1):
        level = F.words(k)
        if flip:
            level = sorted(level)  # counterexample order refers to the original words
        nxt = {}
        failed = None
        for u in level:
            v = reverse(u) if flip else u
            prev = states.get(v[:-1])
            if prev is None:
                # reversed prefix not in the previous level is impossible for a factorial F
                prev = _run(auto, v[:-1])
            st = auto.step(prev, v[-1])
            nxt[v] = st
            if not st and failed is None:
                failed = u
        if failed is not None:
            return CompletenessVerdict(False, F.max_length, failed)
        states = nxt
    return CompletenessVerdict(True, F.max_length)


def _run(auto, w):
    st = auto.start
    for a in w:
        st = auto.step(st, a)
    return st


def is_right_F_complete(X: FiniteCode, F: FactorSet) -> CompletenessVerdict:
    """Is every factor of length <= L a prefix of some word of X^*?"""
    _same_alphabet(X, F)
    return _complete_side(X.words, F, flip=False)


def is_left_F_complete(X: FiniteCode, F: FactorSet) -> CompletenessVerdict:
    _same_alphabet(X, F)
    return _complete_side([reverse(w) for w in X.words], F, flip=True)


def _same_alphabet(X: FiniteCode, F: FactorSet):
    if X.alphabet != F.alphabet:
        raise InvalidInput("code and factor set use different alphabets")


def _check_inside(X: FiniteCode, F: FactorSet):
    for w in X.words:
        if len(w) > F.max_length:
            raise InvalidInput(
                f"{X.alphabet.show(w)!r} is longer than the window L={F.max_length}"
            )
        if w not in F:
            raise InvalidInput(f"{X.alphabet.show(w)!r} is not a factor")


@dataclass(frozen=True)
class MaximalityResult:
    maximal: bool
    bound: int
    extension: Optional[Word] = None


def is_F_maximal_prefix(X: FiniteCode, F: FactorSet) -> MaximalityResult:
    """Search the window for a factor that can be added keeping X prefix."""
    _same_alphabet(X, F)
    if not classify_code(X).is_prefix:
        raise InvalidInput("is_F_maximal_prefix needs a prefix code")
    _check_inside(X, F)
    words = set(X.words)
    proper = {w[:i] for w in words for i in range(1, len(w))}
    for k in range(1, F.max_length + 1):
        for w in F.words(k):
            if w in words or w in proper:
                continue
            if any(w[:i] in words for i in range(1, k)):
                continue
            return MaximalityResult(False, F.max_length, w)
    return MaximalityResult(True, F.max_length)


@dataclass(frozen=True)
class BifixCompleteness:
    complete: bool
    left: CompletenessVerdict
    right: CompletenessVerdict
    consistency_alarm: bool = False


def is_F_complete_bifix(X: FiniteCode, F: FactorSet, recurrent: Optional[bool] = None) -> BifixCompleteness:
    """Both-sided completeness of a bifix code contained in F.

    For recurrent F the two sides must agree; a disagreement sets
    ``consistency_alarm`` and warns (implementation bug or too small a window).
    """
    _same_alphabet(X, F)
    if not classify_code(X).is_bifix:
        raise InvalidInput("is_F_complete_bifix needs a bifix code")
    _check_inside(X, F)
    left = is_left_F_complete(X, F)
    right = is_right_F_complete(X, F)
    if recurrent is None:
        recurrent = F.max_length >= 2 and is_recurrent_up_to(F, min(8, F.max_length - 1)).recurrent
    alarm = recurrent and left.holds != right.holds
    if alarm:
        warnings.warn(
            f"left/right completeness disagree for bifix code {X.show()} in a recurrent window",
            RuntimeWarning,
        )
    return BifixCompleteness(left.holds and right.holds, left, right, alarm)


# -- intersection with F -------------------------------------------------------------

def intersect_with_F(Z, F: FactorSet) -> FiniteCode:
    """Z ∩ F from the window.

    ``Z`` may be a FiniteCode, a PowerCode, a prefix-code Dfa (from
    :mod:`chargedcodes.monoid`), or anything exposing ``walker()``.  For
    infinite Z the window is certified complete when every length-L factor
    already has a prefix in Z; otherwise ResourceLimit carries the partial code.
    """
    if isinstance(Z, FiniteCode):
        _same_alphabet(Z, F)
        found = [w for w in Z.words if w in F]
        partial = FiniteCode(F.alphabet, tuple(found)) if found else None
        if Z.max_length > F.max_length:
            raise ResourceLimit(
                f"code words up to length {Z.max_length} exceed window L={F.max_length}",
                partial=partial, required=Z.max_length,
            )
        if partial is None:
            raise InvalidInput("Z ∩ F is empty")
        return partial
    if isinstance(Z, PowerCode):
        if Z.n > F.max_length:
            raise ResourceLimit(f"A^{Z.n} exceeds window L={F.max_length}", required=Z.n)
        return FiniteCode(F.alphabet, F.words(Z.n))
    walker = Z.walker() if hasattr(Z, "walker") else None
    if walker is None:
        raise InvalidInput(f"unsupported code specification {Z!r}")
    start, step, accepting = walker
    found = []
    frontier = [((), start)]
    for k in range(1, F.max_length + 1):
        nxt = []
        for u, s in frontier:
            for a in range(F.alphabet.size):
                v = u + (a,)
                if v not in F:
                    continue
                t = step(s, a)
                if t is None:
                    continue
                if accepting(t):
                    found.append(v)
                else:
                    nxt.append((v, t))
        frontier = nxt
        if not frontier:
            break
    partial = FiniteCode(F.alphabet, tuple(found)) if found else None
    if frontier:
        raise ResourceLimit(
            f"window L={F.max_length} too small to close Z ∩ F", partial=partial
        )
    if partial is None:
        raise InvalidInput("Z ∩ F is empty")
    return partial


# -- parsing -----------------------------------------------------------------------

def parse(X: FiniteCode, w) -> list:
    """The unique factorization of ``w`` over the code X."""
    if not classify_code(X).is_code:
        raise InvalidInput("parse needs a code (unique factorizations)")
    w = X.alphabet.check_word(tuple(w))
    n = len(w)
    back = [None] * (n + 1)
    back[0] = ()
    lengths = sorted({len(x) for x in X.words})
    codewords = set(X.words)
    for i in range(1, n + 1):
        for m in lengths:
            if m > i:
                break
            if back[i - m] is not None and w[i - m : i] in codewords:
                back[i] = w[i - m : i]
                break
    if back[n] is None:
        raise NotInStar(f"{X.alphabet.show(w)!r} is not in X^*")
    out = []
    i = n
    while i > 0:
        out.append(back[i])
        i -= len(back[i])
    return out[::-1]


def concatenate(parts) -> Word:
    return tuple(a for p in parts for a in p)


def parse_text(text: str, alphabet: Alphabet) -> Word:
    return alphabet.word(tokenize(text))
