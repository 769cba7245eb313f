"""Minimum weight covers and recovery of an optimal matching from one.

A cover assigns every vertex a nonnegative integer with
``C(u) + C(v) >= Wt(u, v)`` on every edge.  The minimum cover weight equals
the maximum matching weight, and any optimal matching uses only tight edges
(``C(u) + C(v) == Wt(u, v)``) and saturates every vertex with ``C > 0``.
"""

from __future__ import annotations

from collections import deque

from .decomposition import SolveMode, decompose
from .errors import ExtractionStuck, InfeasibleCover, InternalCheckFailed
from .graph import BipartiteGraph, Cover, Side, VertexId
from .matching import UNMATCHED, Matching, UnitGraph, max_cardinality_matching


def cover_feasible(g: BipartiteGraph, c: Cover) -> bool:
    if len(c.left) != g.n1 or len(c.right) != g.n2:
        return False
    if any(x < 0 for x in c.left) or any(x < 0 for x in c.right):
        return False
    return all(c.left[u] + c.right[v] >= w for u, v, w in g.edges)


def min_weight_cover(g: BipartiteGraph) -> Cover:
    """Sum of the per-step covers of the modified decomposition loop.

    Raises :class:`InternalCheckFailed` if the result is infeasible or its
    weight differs from the matching weight computed by the same loop.
    """
    weight, _, cover = decompose(g, SolveMode.MODIFIED, with_cover=True)
    if not cover_feasible(g, cover):
        raise InternalCheckFailed("accumulated cover is infeasible")
    if cover.weight != weight:
        raise InternalCheckFailed(f"cover weight {cover.weight} != matching weight {weight}")
    return cover


def tight_subgraph(g: BipartiteGraph, c: Cover) -> UnitGraph:
    """Unit graph of the edges on which the cover inequality is an equality."""
    if not cover_feasible(g, c):
        raise InfeasibleCover("cover violates C(u) + C(v) >= Wt(u, v)")
    return UnitGraph.from_pairs(
        g.n1, g.n2, ((u, v) for u, v, w in g.edges if c.left[u] + c.right[v] == w)
    )


def extract_matching(g: BipartiteGraph, c: Cover) -> Matching:
    """A maximum weight matching of ``g`` given a minimum weight cover ``c``.

    Starts from a maximum cardinality matching of the tight subgraph, then
    repeatedly takes an unmatched vertex ``v`` with ``C(v) > 0`` and flips an
    even alternating path from it that ends at a matched vertex ``w`` with
    ``C(w) < C(v)``.  Each flip raises the weight by ``C(v) - C(w)``.
    """
    tight = tight_subgraph(g, c)
    m = max_cardinality_matching(tight)
    pl, pr = list(m.pair_left), list(m.pair_right)
    adj_l = tight.adj
    adj_r: list[list[int]] = [[] for _ in range(g.n2)]
    for u, v in tight.pairs():
        adj_r[v].append(u)

    target = c.weight
    while True:
        start = _first_stranded(c, pl, pr)
        if start is None:
            break
        if not _flip_from(start, c, adj_l, adj_r, pl, pr):
            got = sum(c.left[u] + c.right[v] for u, v in enumerate(pl) if v != UNMATCHED)
            raise ExtractionStuck(
                f"no improving alternating path from {start}; weight {got} < cover {target}"
            )

    result = Matching(tuple(pl), tuple(pr))
    if result.weight(g) != target:
        raise ExtractionStuck(f"matching weight {result.weight(g)} != cover weight {target}")
    return result


def _first_stranded(c: Cover, pl: list[int], pr: list[int]) -> VertexId | None:
    for u, x in enumerate(c.left):
        if x > 0 and pl[u] == UNMATCHED:
            return VertexId(Side.LEFT, u)
    for v, x in enumerate(c.right):
        if x > 0 and pr[v] == UNMATCHED:
            return VertexId(Side.RIGHT, v)
    return None


def _flip_from(start: VertexId, c: Cover, adj_l, adj_r, pl, pr) -> bool:
    # Orient the search so that "own" is start's side and "other" the opposite side.
    if start.side is Side.LEFT:
        own_adj, own_pair, other_pair, own_c = adj_l, pl, pr, c.left
    else:
        own_adj, own_pair, other_pair, own_c = adj_r, pr, pl, c.right
    s = start.index
    limit = own_c[s]
    # BFS over own-side vertices; parent[x] = (previous own vertex, connecting other vertex).
    parent: dict[int, tuple[int, int]] = {s: (-1, -1)}
    queue = deque([s])
    end = -1
    while queue and end < 0:
        x = queue.popleft()
        for y in own_adj[x]:
            if own_pair[x] == y:
                continue
            z = other_pair[y]
            if z == UNMATCHED or z in parent:
                continue
            parent[z] = (x, y)
            if own_c[z] < limit:
                end = z
                break
            queue.append(z)
    if end < 0:
        return False
    # Walk back: each (x, y) becomes matched, releasing z at the far end.
    z = end
    own_pair[z] = UNMATCHED
    while z != s:
        x, y = parent[z]
        own_pair[x] = y
        other_pair[y] = x
        z = x
    return True
