"""Maximum cardinality matching (Hopcroft-Karp) and König vertex covers.

Everything here is deterministic: BFS phases scan free left vertices in
index order and DFS tries neighbours in adjacency-list order, which is kept
sorted by right index.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import NotMaximumMatching
from .graph import Side, VertexId

UNMATCHED = -1
_INF = float("inf")


class UnitGraph:
    """Unweighted bipartite graph given by sorted left adjacency lists."""

    __slots__ = ("n1", "n2", "adj")

    def __init__(self, n1: int, n2: int, adj: Sequence[Iterable[int]] | None = None):
        self.n1 = n1
        self.n2 = n2
        if adj is None:
            self.adj: list[list[int]] = [[] for _ in range(n1)]
        else:
            self.adj = [sorted(set(a)) for a in adj]
            if len(self.adj) != n1:
                raise ValueError(f"expected {n1} adjacency lists, got {len(self.adj)}")

    @classmethod
    def from_pairs(cls, n1: int, n2: int, pairs: Iterable[tuple[int, int]]) -> UnitGraph:
        adj: list[list[int]] = [[] for _ in range(n1)]
        for u, v in pairs:
            adj[u].append(v)
        return cls(n1, n2, adj)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                yield u, v

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitGraph):
            return NotImplemented
        return (self.n1, self.n2, self.adj) == (other.n1, other.n2, other.adj)

    def __repr__(self) -> str:
        return f"UnitGraph(n1={self.n1}, n2={self.n2}, edges={list(self.pairs())})"


@dataclass(frozen=True)
class Matching:
    """A matching stored as mutually inverse partner arrays (-1 = unmatched)."""

    pair_left: tuple[int, ...]
    pair_right: tuple[int, ...]

    @classmethod
    def from_pairs(cls, n1: int, n2: int, pairs: Iterable[tuple[int, int]]) -> Matching:
        pl = [UNMATCHED] * n1
        pr = [UNMATCHED] * n2
        for u, v in pairs:
            if pl[u] != UNMATCHED or pr[v] != UNMATCHED:
                raise ValueError(f"pair ({u}, {v}) shares a vertex with another pair")
            pl[u] = v
            pr[v] = u
        return cls(tuple(pl), tuple(pr))

    @property
    def cardinality(self) -> int:
        return sum(1 for v in self.pair_left if v != UNMATCHED)

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in enumerate(self.pair_left) if v != UNMATCHED]

    def weight(self, graph) -> int:
        """Total weight of the matched pairs in a weighted ``graph``."""
        return sum(graph.weight(u, v) for u, v in self.pairs())

    def is_valid_for(self, graph) -> bool:
        """True iff the partner arrays are consistent and every pair is an edge of ``graph``."""
        if len(self.pair_left) != graph.n1 or len(self.pair_right) != graph.n2:
            return False
        for u, v in enumerate(self.pair_left):
            if v != UNMATCHED and self.pair_right[v] != u:
                return False
        for v, u in enumerate(self.pair_right):
            if u != UNMATCHED and self.pair_left[u] != v:
                return False
        if isinstance(graph, UnitGraph):
            return all(v in graph.adj[u] for u, v in self.pairs())
        return all(graph.weight(u, v) > 0 for u, v in self.pairs())


@dataclass(frozen=True)
class VertexCoverSet:
    left: frozenset[int] = field(default_factory=frozenset)
    right: frozenset[int] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.left) + len(self.right)

    def __iter__(self) -> Iterator[VertexId]:
        for u in sorted(self.left):
            yield VertexId(Side.LEFT, u)
        for v in sorted(self.right):
            yield VertexId(Side.RIGHT, v)

    def __contains__(self, vid: object) -> bool:
        if not isinstance(vid, VertexId):
            return False
        return vid.index in (self.left if vid.side is Side.LEFT else self.right)

    def covers(self, g: UnitGraph) -> bool:
        return all(u in self.left or v in self.right for u, v in g.pairs())


def max_cardinality_matching(g: UnitGraph) -> Matching:
    """Maximum cardinality matching of ``g`` via Hopcroft-Karp."""
    pair_left = [UNMATCHED] * g.n1
    pair_right = [UNMATCHED] * g.n2
    adj = g.adj
    dist = [0] * g.n1

    # Greedy warm start, same scan order as the phases.
    for u in range(g.n1):
        for v in adj[u]:
            if pair_right[v] == UNMATCHED:
                pair_left[u] = v
                pair_right[v] = u
                break

    while _bfs(adj, pair_left, pair_right, dist):
        for u in range(g.n1):
            if pair_left[u] == UNMATCHED:
                _dfs(u, adj, pair_left, pair_right, dist)
    return Matching(tuple(pair_left), tuple(pair_right))


def _bfs(adj, pair_left, pair_right, dist) -> bool:
    queue: deque[int] = deque()
    for u in range(len(adj)):
        if pair_left[u] == UNMATCHED:
            dist[u] = 0
            queue.append(u)
        else:
            dist[u] = _INF
    found = False
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            w = pair_right[v]
            if w == UNMATCHED:
                found = True
            elif dist[w] == _INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return found


def _dfs(root, adj, pair_left, pair_right, dist) -> bool:
    # Iterative layered DFS; each frame is (left vertex, next neighbour position).
    stack = [[root, 0]]
    path: list[int] = []
    while stack:
        frame = stack[-1]
        u, i = frame
        nbrs = adj[u]
        advanced = False
        while i < len(nbrs):
            v = nbrs[i]
            i += 1
            w = pair_right[v]
            if w == UNMATCHED:
                frame[1] = i
                path.append(v)
                # Augment along the stack.
                for (lu, _), rv in zip(stack, path):
                    pair_left[lu] = rv
                    pair_right[rv] = lu
                return True
            if dist[w] == dist[u] + 1:
                frame[1] = i
                path.append(v)
                stack.append([w, 0])
                advanced = True
                break
        if not advanced:
            dist[u] = _INF
            stack.pop()
            if path:
                path.pop()
    return False


def alternating_reachable(g: UnitGraph, m: Matching) -> tuple[set[int], set[int]]:
    """Vertices reachable by alternating paths from unmatched left vertices."""
    zl = {u for u in range(g.n1) if m.pair_left[u] == UNMATCHED}
    zr: set[int] = set()
    queue = deque(sorted(zl))
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in zr or m.pair_left[u] == v:
                continue
            zr.add(v)
            w = m.pair_right[v]
            if w != UNMATCHED and w not in zl:
                zl.add(w)
                queue.append(w)
    return zl, zr


def koenig_vertex_cover(g: UnitGraph, m: Matching) -> VertexCoverSet:
    """Minimum vertex cover ``(L \\ Z) ∪ (R ∩ Z)`` from a maximum matching ``m``."""
    zl, zr = alternating_reachable(g, m)
    cover = VertexCoverSet(
        frozenset(u for u in range(g.n1) if u not in zl),
        frozenset(zr),
    )
    if len(cover) != m.cardinality or not cover.covers(g):
        raise NotMaximumMatching(
            f"cover of size {len(cover)} for matching of size {m.cardinality}"
        )
    return cover


def has_augmenting_path(g: UnitGraph, m: Matching) -> bool:
    """One extra BFS: does an unmatched right vertex lie in the alternating forest?"""
    _, zr = alternating_reachable(g, m)
    return any(m.pair_right[v] == UNMATCHED for v in zr)
