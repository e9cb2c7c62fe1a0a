"""Automata for X^*, their transition monoids, and Green's relations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .errors import InvalidInput, ResourceLimit
from .words import Alphabet

DEFAULT_ELEMENT_CAP = 100_000


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    states: int
    initial: int
    accepting: frozenset
    delta: tuple  # delta[a][q] = next state

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        if len(delta) != self.alphabet.size:
            raise InvalidInput("one transition row per letter is required")
        for row in delta:
            if len(row) != self.states or any(not 0 <= q < self.states for q in row):
                raise InvalidInput("transition table must be total on the state set")
        if not 0 <= self.initial < self.states:
            raise InvalidInput("initial state out of range")
        acc = frozenset(self.accepting)
        if any(not 0 <= q < self.states for q in acc):
            raise InvalidInput("accepting state out of range")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "accepting", acc)

    def run(self, w, q=None) -> int:
        q = self.initial if q is None else q
        for a in w:
            q = self.delta[a][q]
        return q

    def accepts(self, w) -> bool:
        return self.run(w) in self.accepting

    def to_json(self) -> dict:
        return {
            "states": self.states,
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "delta": {self.alphabet.symbols[a]: list(row) for a, row in enumerate(self.delta)},
        }

    @classmethod
    def from_json(cls, data: dict, alphabet: Optional[Alphabet] = None) -> "Dfa":
        alphabet = alphabet or Alphabet.of(data["delta"].keys())
        delta = tuple(tuple(data["delta"][s]) for s in alphabet.symbols)
        return cls(alphabet, int(data["states"]), int(data["initial"]),
                   frozenset(data["accepting"]), delta)

    def coaccessible(self) -> frozenset:
        """States from which an accepting state is reachable."""
        good = set(self.accepting)
        changed = True
        while changed:
            changed = False
            for q in range(self.states):
                if q not in good and any(row[q] in good for row in self.delta):
                    good.add(q)
                    changed = True
        return frozenset(good)

    def walker(self):
        """Hooks for :func:`code.intersect_with_F`, reading the DFA as a prefix code Z."""
        live = self.coaccessible()
        for q in self.accepting:
            if any(self.delta[a][q] in live for a in range(self.alphabet.size)):
                raise InvalidInput("DFA does not present a prefix code")

        def step(q, a):
            r = self.delta[a][q]
            return r if r in live else None

        return self.initial, step, self.accepting.__contains__


def accessible(dfa: Dfa) -> Dfa:
    """Relabel states in breadth-first order from the initial state, dropping the rest."""
    order = {dfa.initial: 0}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for row in dfa.delta:
            r = row[q]
            if r not in order:
                order[r] = len(order)
                queue.append(r)
    delta = []
    for row in dfa.delta:
        new = [0] * len(order)
        for q, i in order.items():
            new[i] = order[row[q]]
        delta.append(tuple(new))
    acc = frozenset(order[q] for q in dfa.accepting if q in order)
    return Dfa(dfa.alphabet, len(order), 0, acc, tuple(delta))


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement on the accessible part, canonically relabelled."""
    dfa = accessible(dfa)
    n, k = dfa.states, dfa.alphabet.size
    inverse = [[[] for _ in range(n)] for _ in range(k)]
    for a in range(k):
        for q, r in enumerate(dfa.delta[a]):
            inverse[a][r].append(q)
    acc = set(dfa.accepting)
    rej = set(range(n)) - acc
    partition = [b for b in (acc, rej) if b]
    work = [frozenset(b) for b in partition]
    while work:
        splitter = work.pop()
        for a in range(k):
            pre = {q for r in splitter for q in inverse[a][r]}
            if not pre:
                continue
            refined = []
            for block in partition:
                inside = block & pre
                outside = block - pre
                if inside and outside:
                    refined += [inside, outside]
                    fb = frozenset(block)
                    if fb in work:
                        work.remove(fb)
                        work += [frozenset(inside), frozenset(outside)]
                    else:
                        work.append(frozenset(min(inside, outside, key=len)))
                else:
                    refined.append(block)
            partition = refined
    block_of = {}
    for i, block in enumerate(partition):
        for q in block:
            block_of[q] = i
    delta = tuple(
        tuple(block_of[dfa.delta[a][min(block)]] for block in partition) for a in range(k)
    )
    quotient = Dfa(dfa.alphabet, len(partition), block_of[dfa.initial],
                   frozenset(block_of[q] for q in dfa.accepting), delta)
    return accessible(quotient)


def dfa_of_star(X, alphabet: Optional[Alphabet] = None) -> Dfa:
    """Minimal DFA of X^* for a FiniteCode or PowerCode X."""
    from .code import PowerCode

    if isinstance(X, PowerCode):
        if alphabet is None:
            raise InvalidInput("A^n needs an alphabet")
        n = X.n
        delta = tuple(tuple((q + 1) % n for q in range(n)) for _ in range(alphabet.size))
        return minimize(Dfa(alphabet, n, 0, frozenset([0]), delta))
    alphabet = X.alphabet
    words = set(X.words)
    proper = {w[:i] for w in words for i in range(len(w))}
    start = frozenset([()])
    index = {start: 0}
    queue = deque([start])
    rows = [[] for _ in range(alphabet.size)]
    while queue:
        state = queue.popleft()
        for a in range(alphabet.size):
            nxt = set()
            for p in state:
                q = p + (a,)
                if q in proper:
                    nxt.add(q)
                if q in words:
                    nxt.add(())
            nxt = frozenset(nxt)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            rows[a].append(index[nxt])
    accepting = frozenset(i for s, i in index.items() if () in s)
    return minimize(Dfa(alphabet, len(index), 0, accepting, tuple(map(tuple, rows))))


# -- transition monoid ----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteMonoid:
    """Transition monoid: element i is the state map of ``representatives[i]``.

    Products read left to right: ``mul(i, j)`` acts as i first, then j.
    """

    alphabet: Alphabet
    elements: tuple
    representatives: tuple
    generators: tuple  # generators[a] = element index of letter a
    right: tuple  # right[i][a] = mul(i, generators[a])
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.elements)})

    identity = 0

    def __len__(self):
        return len(self.elements)

    def index(self, t) -> int:
        return self._index[tuple(t)]

    def mul(self, i: int, j: int) -> int:
        t, s = self.elements[i], self.elements[j]
        return self._index[tuple(s[q] for q in t)]

    def product(self, items) -> int:
        out = self.identity
        for i in items:
            out = self.mul(out, i)
        return out

    def is_idempotent(self, i: int) -> bool:
        return self.mul(i, i) == i

    def is_permutation(self, i: int) -> bool:
        t = self.elements[i]
        return len(set(t)) == len(t)

    def inverse(self, i: int) -> int:
        """Group inverse (only meaningful for permutations)."""
        t = self.elements[i]
        inv = [0] * len(t)
        for q, r in enumerate(t):
            inv[r] = q
        return self._index[tuple(inv)]

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
            if k > len(self.elements) + 1:
                raise InvalidInput("element has no finite order in a group")
        return k

    def show(self, i: int) -> str:
        w = self.representatives[i]
        return self.alphabet.show(w) if w else "1"


def transition_monoid(dfa: Dfa, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    """Breadth-first closure of the letter transformations under composition."""
    ident = tuple(range(dfa.states))
    elements = [ident]
    reps = [()]
    index = {ident: 0}
    right = []
    i = 0
    while i < len(elements):
        t = elements[i]
        row = []
        for a, letter in enumerate(dfa.delta):
            s = tuple(letter[q] for q in t)
            j = index.get(s)
            if j is None:
                if len(elements) >= cap:
                    raise ResourceLimit(f"transition monoid exceeds {cap} elements")
                j = index[s] = len(elements)
                elements.append(s)
                reps.append(reps[i] + (a,))
            row.append(j)
        right.append(tuple(row))
        i += 1
    generators = tuple(right[0])
    return FiniteMonoid(dfa.alphabet, tuple(elements), tuple(reps), generators, tuple(right))


def syntactic_monoid(X, alphabet: Optional[Alphabet] = None, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    return transition_monoid(dfa_of_star(X, alphabet), cap)


def eta(M: FiniteMonoid, w) -> int:
    """Element index of the image of the word ``w``."""
    i = M.identity
    for a in w:
        M.alphabet.check_letter(a)
        i = M.right[i][a]
    return i


# -- Green's relations -----------------------------------------------------------------

@dataclass(frozen=True)
class GreenSummary:
    R: tuple  # partitions: tuples of sorted element-index tuples
    L: tuple
    J: tuple
    H: tuple
    idempotents: tuple
    minimal_ideal: tuple
    max_subgroup: tuple
    max_subgroup_table: tuple  # table[x][y] = position of product in max_subgroup
    is_group: bool

    def class_of(self, partition: str, i: int) -> tuple:
        for block in getattr(self, partition):
            if i in block:
                return block
        raise KeyError(i)


def _partition(graph: nx.DiGraph) -> tuple:
    blocks = [tuple(sorted(c)) for c in nx.strongly_connected_components(graph)]
    return tuple(sorted(blocks))


def left_multiplication(M: FiniteMonoid) -> tuple:
    return tuple(tuple(M.mul(g, i) for g in M.generators) for i in range(len(M)))


def green_summary(M: FiniteMonoid) -> GreenSummary:
    """R and L classes are strongly connected components of the right and left
    Cayley graphs; J = D is their join; H their meet."""
    n = len(M)
    right_g = nx.DiGraph()
    left_g = nx.DiGraph()
    right_g.add_nodes_from(range(n))
    left_g.add_nodes_from(range(n))
    left = left_multiplication(M)
    for i in range(n):
        right_g.add_edges_from((i, j) for j in M.right[i])
        left_g.add_edges_from((i, j) for j in left[i])
    R = _partition(right_g)
    L = _partition(left_g)

    join = nx.utils.UnionFind(range(n))
    for block in R + L:
        join.union(*block)
    J = tuple(sorted(tuple(sorted(s)) for s in join.to_sets()))

    r_of = {i: k for k, b in enumerate(R) for i in b}
    l_of = {i: k for k, b in enumerate(L) for i in b}
    cells = {}
    for i in range(n):
        cells.setdefault((r_of[i], l_of[i]), []).append(i)
    H = tuple(sorted(tuple(c) for c in cells.values()))

    idempotents = tuple(i for i in range(n) if M.is_idempotent(i))
    z = M.product(range(n))
    minimal = next(b for b in J if z in b)
    e = next(i for i in minimal if i in idempotents)
    group = next(b for b in H if e in b)
    pos = {x: k for k, x in enumerate(group)}
    table = tuple(tuple(pos[M.mul(x, y)] for y in group) for x in group)
    return GreenSummary(R, L, J, H, idempotents, minimal, group, table,
                        is_group=len(H) == 1)


def egg_box(M: FiniteMonoid, G: GreenSummary) -> list:
    """Per J-class: rows are R-classes, columns L-classes, cells H-classes."""
    idem = set(G.idempotents)
    out = []
    for jc in G.J:
        members = set(jc)
        rows = [r for r in G.R if r[0] in members]
        cols = [c for c in G.L if c[0] in members]
        grid = []
        for r in rows:
            line = []
            for c in cols:
                cell = sorted(set(r) & set(c))
                line.append({
                    "elements": [M.show(i) for i in cell],
                    "idempotent": any(i in idem for i in cell),
                })
            grid.append(line)
        out.append({"size": len(jc), "regular": any(i in idem for i in jc), "grid": grid})
    return out


def egg_box_text(M: FiniteMonoid, G: GreenSummary) -> str:
    blocks = []
    for k, box in enumerate(egg_box(M, G)):
        lines = [f"J-class {k} (size {box['size']}{', regular' if box['regular'] else ''})"]
        cells = [[("*" if c["idempotent"] else "") + ",".join(c["elements"]) for c in row]
                 for row in box["grid"]]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            lines.append("| " + " | ".join(c.ljust(width) for c in row) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


# -- group codes ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupCodeResult:
    group: bool
    order: Optional[int]
    monoid: FiniteMonoid


def is_group_code(Z, alphabet: Optional[Alphabet] = None, cap: int = DEFAULT_ELEMENT_CAP) -> GroupCodeResult:
    """Is the syntactic monoid of Z^* a finite group?"""
    M = syntactic_monoid(Z, alphabet, cap)
    group = all(M.is_permutation(g) for g in M.generators)
    return GroupCodeResult(group, len(M) if group else None, M)
