"""Stallings foldings for finitely generated subgroups of a free group.

Letters of the free group are alphabet indices; a signed letter is a pair
``(a, +1)`` or ``(a, -1)``.  Positive words are already reduced.
"""

from __future__ import annotations

from dataclasses import dataclass

from networkx.utils import UnionFind


def reduce_word(signed) -> tuple:
    out = []
    for a, e in signed:
        if out and out[-1] == (a, -e):
            out.pop()
        else:
            out.append((a, e))
    return tuple(out)


@dataclass(frozen=True)
class FoldedGraph:
    base: int
    vertices: frozenset
    edges: frozenset  # (u, a, v): edge u --a--> v

    def is_rose(self, rank: int) -> bool:
        return self.vertices == {self.base} and len(self.edges) == rank

    def accepts(self, signed) -> bool:
        """Does the reduced word label a closed path at the base (subgroup membership)?"""
        out = {}
        for u, a, v in self.edges:
            out[(u, a, 1)] = v
            out[(v, a, -1)] = u
        q = self.base
        for a, e in reduce_word(signed):
            q = out.get((q, a, e))
            if q is None:
                return False
        return q == self.base


def fold(generators) -> FoldedGraph:
    """Folded core graph of the subgroup generated by positive words."""
    edges = set()
    fresh = 1
    for w in generators:
        q = 0
        for i, a in enumerate(w):
            if i == len(w) - 1:
                nxt = 0
            else:
                nxt = fresh
                fresh += 1
            edges.add((q, a, nxt))
            q = nxt
    uf = UnionFind()
    while True:
        canon = {(uf[u], a, uf[v]) for u, a, v in edges}
        edges = canon
        clash = _find_fold(edges)
        if clash is None:
            break
        uf.union(*clash)
    edges = _trim(edges, uf[0])
    vertices = {uf[0]} | {u for u, _, _ in edges} | {v for _, _, v in edges}
    return FoldedGraph(uf[0], frozenset(vertices), frozenset(edges))


def _find_fold(edges):
    seen = {}
    for u, a, v in sorted(edges):
        for key, other in (((u, a, 1), v), ((v, a, -1), u)):
            prev = seen.setdefault(key, other)
            if prev != other:
                return prev, other
    return None


def _trim(edges, base):
    """Drop hanging trees away from the base vertex."""
    edges = set(edges)
    while True:
        degree = {}
        for u, _, v in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = {x for x, d in degree.items() if d == 1 and x != base}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}


def generates_free_group(generators, rank: int) -> bool:
    return fold(generators).is_rose(rank)
