"""(2,3) pebble game: generic planar rigidity without linear algebra.

Every vertex starts with two pebbles. An edge may be inserted when
four pebbles can be gathered on its endpoints by reversing directed
paths; insertion consumes one pebble and orients the edge. Accepted
edges always form an independent set of the planar generic rigidity
matroid, so the number of accepted edges is the matroid rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .graphs import EuclideanGraph, Pair, normalize_edge
from .rigidity import s_euclidean


@dataclass
class PebbleState:
    """Mutable game state: pebble counts, edge orientations, accepted edges."""

    n: int
    pebbles: list[int] = field(default_factory=list)
    out: list[set[int]] = field(default_factory=list)
    accepted: list[Pair] = field(default_factory=list)

    def __post_init__(self):
        if not self.pebbles:
            self.pebbles = [2] * self.n
        if not self.out:
            self.out = [set() for _ in range(self.n)]

    def _gather_one(self, root: int, other: int) -> bool:
        """Move one free pebble to root, if reachable. The other endpoint
        is never used as a source. Deterministic DFS, ascending order."""
        parent: dict[int, Optional[int]] = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            if x not in (root, other) and self.pebbles[x] > 0:
                # reverse the path root -> ... -> x and carry the pebble back
                self.pebbles[x] -= 1
                self.pebbles[root] += 1
                y = x
                while parent[y] is not None:
                    p = parent[y]
                    self.out[p].discard(y)
                    self.out[y].add(p)
                    y = p
                return True
            for y in sorted(self.out[x], reverse=True):
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        return False

    def try_insert(self, u: int, w: int) -> bool:
        """Insert edge {u, w} if it is independent; report success."""
        if u == w:
            raise ValueError(f"self loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= w < self.n):
            raise ValueError(f"vertex out of range for n={self.n}")
        while self.pebbles[u] + self.pebbles[w] < 4:
            if self.pebbles[u] < 2 and self._gather_one(u, w):
                continue
            if self.pebbles[w] < 2 and self._gather_one(w, u):
                continue
            return False
        self.pebbles[u] -= 1
        self.out[u].add(w)
        self.accepted.append(normalize_edge((u, w)))
        return True

    def insert_all(self, edges: Iterable[Sequence[int]]) -> int:
        """Insert edges in the given order; return how many were accepted."""
        count = 0
        for e in edges:
            u, w = normalize_edge(e)
            if self.try_insert(u, w):
                count += 1
        return count


def laman_rank(g: EuclideanGraph) -> int:
    """Rank of the edge set in the planar generic rigidity matroid."""
    state = PebbleState(g.n)
    return state.insert_all(g.edges)


def laman_independent(g: EuclideanGraph) -> bool:
    return laman_rank(g) == g.m


def laman_rigid(g: EuclideanGraph) -> bool:
    """Generic planar rigidity: rank reaches s_euclidean(n, 2)."""
    return laman_rank(g) == s_euclidean(g.n, 2)
