"""Finite windows onto factorial languages.

A :class:`FactorSet` holds every factor of a language up to a length bound
``L``.  All verdicts computed here are relative to that window: recurrence,
uniform recurrence and extension-graph shapes are only checked for the
orders the window can support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import networkx as nx

from .errors import InvalidInput
from .words import Alphabet, Word, factors_of


@dataclass(frozen=True)
class FactorSet:
    """Factors of a language grouped by length.

    ``levels[k]`` is the sorted tuple of length-``k`` members; ``levels[0]``
    is always ``((),)``.  Levels may be empty (finite decoded languages).
    """

    alphabet: Alphabet
    max_length: int
    levels: tuple
    _members: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.levels) != self.max_length + 1:
            raise InvalidInput("levels must cover lengths 0..max_length")
        object.__setattr__(
            self, "_members", frozenset(w for level in self.levels for w in level)
        )

    @classmethod
    def from_words(cls, alphabet: Alphabet, words: Iterable[Word], max_length: int) -> "FactorSet":
        """Factorial closure of ``words``, truncated at ``max_length``."""
        buckets = [set() for _ in range(max_length + 1)]
        buckets[0].add(())
        for w in words:
            for u in factors_of(tuple(w), max_length):
                buckets[len(u)].add(u)
        return cls(alphabet, max_length, tuple(tuple(sorted(b)) for b in buckets))

    @classmethod
    def from_periodic(cls, alphabet: Alphabet, period: Word, max_length: int) -> "FactorSet":
        """Factors of the bi-infinite periodic word ``...uuu...``."""
        period = tuple(period)
        if not period:
            raise InvalidInput("period word must be nonempty")
        reps = max_length // len(period) + 2
        return cls.from_words(alphabet, [period * reps], max_length)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._members

    def words(self, k: int) -> tuple:
        if not 0 <= k <= self.max_length:
            raise InvalidInput(f"length {k} outside window 0..{self.max_length}")
        return self.levels[k]

    def members(self):
        for level in self.levels:
            yield from level

    def restrict(self, max_length: int) -> "FactorSet":
        if not 0 <= max_length <= self.max_length:
            raise InvalidInput(f"cannot restrict window {self.max_length} to {max_length}")
        return FactorSet(self.alphabet, max_length, self.levels[: max_length + 1])

    def is_factorial(self) -> bool:
        for level in self.levels[1:]:
            for w in level:
                if w[1:] not in self._members or w[:-1] not in self._members:
                    return False
        return True

    def is_prolongable(self, upto: Optional[int] = None) -> bool:
        """Every member of length < ``upto`` extends by a letter on each side."""
        upto = self.max_length if upto is None else upto
        letters = range(self.alphabet.size)
        for k in range(min(upto, self.max_length)):
            for w in self.levels[k]:
                if not any((a,) + w in self._members for a in letters):
                    return False
                if not any(w + (a,) in self._members for a in letters):
                    return False
        return True

    def show(self, w: Word) -> str:
        return self.alphabet.show(w)

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet.to_json(),
            "L": self.max_length,
            "factors": [[self.alphabet.show(w) for w in level] for level in self.levels[1:]],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "FactorSet":
        alphabet = Alphabet.of(data["alphabet"])
        L = int(data["L"])
        levels = [((),)]
        for group in data["factors"]:
            levels.append(tuple(sorted(alphabet.word(_split_display(alphabet, s)) for s in group)))
        if len(levels) != L + 1:
            raise InvalidInput("factor groups do not match L")
        fs = cls(alphabet, L, tuple(levels))
        if not fs.is_factorial():
            raise InvalidInput("factor set is not factorial")
        return fs


def _split_display(alphabet: Alphabet, s: str) -> list:
    """Greedy split of a display string into alphabet symbols (longest first)."""
    names = sorted(alphabet.symbols, key=len, reverse=True)
    out, i = [], 0
    while i < len(s):
        for name in names:
            if s.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            raise InvalidInput(f"cannot split {s!r} over alphabet {alphabet.symbols}")
    return out


def _check_order(F: FactorSet, k: int, slack: int, what: str):
    if k < 0 or k + slack > F.max_length:
        raise InvalidInput(
            f"{what}: order {k} needs window length {k + slack}, have L={F.max_length}"
        )


def complexity(F: FactorSet, k: int) -> int:
    """Number of length-``k`` factors."""
    _check_order(F, k, 0, "complexity")
    return len(F.levels[k])


@dataclass(frozen=True)
class RauzyGraph:
    order: int
    vertices: tuple
    edges: tuple  # (source, target, label) with label the (k+1)-factor

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((u, v, {"label": w}) for u, v, w in self.edges)
        return g


def rauzy_graph(F: FactorSet, k: int) -> RauzyGraph:
    _check_order(F, k, 1, "rauzy_graph")
    edges = tuple((w[:-1], w[1:], w) for w in F.levels[k + 1])
    return RauzyGraph(k, F.levels[k], edges)


@dataclass(frozen=True)
class RecurrenceResult:
    recurrent: bool
    k_max: int
    failing_order: Optional[int] = None


def is_recurrent_up_to(F: FactorSet, k_max: int) -> RecurrenceResult:
    """Strong connectivity of every Rauzy graph of order 1..k_max."""
    _check_order(F, k_max, 1, "is_recurrent_up_to")
    for k in range(1, k_max + 1):
        g = rauzy_graph(F, k).to_networkx()
        if g.number_of_nodes() == 0 or not nx.is_strongly_connected(g):
            return RecurrenceResult(False, k_max, k)
    return RecurrenceResult(True, k_max)


@dataclass(frozen=True)
class UniformRecurrenceResult:
    uniform: bool
    order: int
    window: int
    R: Optional[int] = None
    counterexample: Optional[Word] = None
    witness_window: Optional[Word] = None


def is_uniformly_recurrent_up_to(F: FactorSet, k: int) -> UniformRecurrenceResult:
    """Least R <= L such that every length-k factor occurs in every length-R factor.

    On failure the counterexample is the first length-k factor (in lexicographic
    order) missing from some length-L factor, and ``witness_window`` is that
    length-L factor.
    """
    if not 1 <= k < F.max_length:
        raise InvalidInput(f"is_uniformly_recurrent_up_to: need 1 <= k < L={F.max_length}, got {k}")
    target = set(F.levels[k])
    if not target:
        return UniformRecurrenceResult(False, k, F.max_length)

    def covers(R):
        windows = F.levels[R]
        return bool(windows) and all(
            target <= {w[i : i + k] for i in range(R - k + 1)} for w in windows
        )

    # in a factorial set, covering at R implies covering at every R' > R
    if covers(F.max_length):
        lo, hi = k, F.max_length
        while lo < hi:
            mid = (lo + hi) // 2
            if covers(mid):
                hi = mid
            else:
                lo = mid + 1
        return UniformRecurrenceResult(True, k, F.max_length, R=lo)
    L = F.max_length
    for u in F.levels[k]:
        for w in F.levels[L]:
            if u not in {w[i : i + k] for i in range(L - k + 1)}:
                return UniformRecurrenceResult(False, k, L, counterexample=u, witness_window=w)
    # empty top level: the language is finite
    return UniformRecurrenceResult(False, k, L, counterexample=F.levels[k][0])


@dataclass(frozen=True)
class ExtensionGraph:
    center: Word
    left: tuple
    right: tuple
    edges: tuple  # (a, b) with a w b in F

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(("L", a) for a in self.left)
        g.add_nodes_from(("R", b) for b in self.right)
        g.add_edges_from((("L", a), ("R", b)) for a, b in self.edges)
        return g

    def is_connected(self) -> bool:
        g = self.graph()
        return g.number_of_nodes() > 0 and nx.is_connected(g)

    def is_tree(self) -> bool:
        g = self.graph()
        return g.number_of_nodes() > 0 and nx.is_tree(g)

    def shape(self) -> str:
        if self.is_tree():
            return "tree"
        if self.is_connected():
            return "connected-not-tree"
        return "disconnected"


def extension_graph(F: FactorSet, w) -> ExtensionGraph:
    w = tuple(w)
    if len(w) + 2 > F.max_length:
        raise InvalidInput(f"extension_graph: |w|+2 = {len(w) + 2} exceeds L={F.max_length}")
    if w not in F:
        raise InvalidInput(f"extension_graph: {F.show(w)!r} is not a factor")
    letters = range(F.alphabet.size)
    left = tuple(a for a in letters if (a,) + w in F)
    right = tuple(b for b in letters if w + (b,) in F)
    edges = tuple((a, b) for a in left for b in right if (a,) + w + (b,) in F)
    return ExtensionGraph(w, left, right, edges)


@dataclass(frozen=True)
class WordClassification:
    max_center: int
    shapes: dict  # center word -> "tree" | "connected-not-tree" | "disconnected"
    dendric: bool
    connected: bool

    def first_with(self, *kinds) -> Optional[Word]:
        for w in sorted(self.shapes, key=lambda u: (len(u), u)):
            if self.shapes[w] in kinds:
                return w
        return None


def classify_words(F: FactorSet, max_center: int) -> WordClassification:
    _check_order(F, max_center, 2, "classify_words")
    shapes = {}
    for n in range(max_center + 1):
        for w in F.levels[n]:
            shapes[w] = extension_graph(F, w).shape()
    kinds = set(shapes.values())
    return WordClassification(
        max_center,
        shapes,
        dendric=kinds <= {"tree"},
        connected=kinds <= {"tree", "connected-not-tree"},
    )
