"""Brute-force maximum weight matching for small graphs.

Two constructions that share no code with the decomposition solver or with
each other: a subset DP over the smaller partition and a plain enumeration
of all edge subsets.
"""

from __future__ import annotations

from itertools import combinations

from .errors import TooLarge
from .graph import BipartiteGraph
from .matching import Matching

MAX_DP_SIDE = 15
MAX_ENUM_EDGES = 20


def oracle_mwm(g: BipartiteGraph) -> tuple[int, Matching]:
    """Exact maximum weight matching by DP over subsets of the smaller side."""
    small = min(g.n1, g.n2)
    if small > MAX_DP_SIDE:
        raise TooLarge(f"smaller side has {small} vertices, oracle limit is {MAX_DP_SIDE}")
    transpose = g.n1 < g.n2  # rows = larger side, mask bits = smaller side
    rows = g.n2 if transpose else g.n1
    if transpose:
        nbrs = [sorted(g.neighbors_right(r).items()) for r in range(rows)]
    else:
        nbrs = [sorted(g.neighbors_left(r).items()) for r in range(rows)]

    # best[mask] after processing rows[:i]; choice[i][mask] remembers the column taken.
    best = {0: 0}
    choices: list[dict[int, tuple[int, int]]] = []
    for r in range(rows):
        nxt: dict[int, int] = dict(best)
        back: dict[int, tuple[int, int]] = {m: (m, -1) for m in best}
        for mask, val in best.items():
            for c, w in nbrs[r]:
                bit = 1 << c
                if mask & bit:
                    continue
                nm = mask | bit
                if nxt.get(nm, -1) < val + w:
                    nxt[nm] = val + w
                    back[nm] = (mask, c)
        best = nxt
        choices.append(back)

    mask = max(best, key=lambda m: (best[m], -m))
    weight = best[mask]
    pairs = []
    for r in range(rows - 1, -1, -1):
        prev, c = choices[r][mask]
        if c >= 0:
            pairs.append((c, r) if transpose else (r, c))
        mask = prev
    return weight, Matching.from_pairs(g.n1, g.n2, pairs)


def oracle_enumerate(g: BipartiteGraph) -> int:
    """Maximum weight over every edge subset that happens to be a matching."""
    edges = g.edges
    if len(edges) > MAX_ENUM_EDGES:
        raise TooLarge(f"{len(edges)} edges, enumeration limit is {MAX_ENUM_EDGES}")
    best = 0
    for k in range(1, min(g.n1, g.n2) + 1):
        for subset in combinations(edges, k):
            lefts = {e.left for e in subset}
            rights = {e.right for e in subset}
            if len(lefts) == k and len(rights) == k:
                best = max(best, sum(e.weight for e in subset))
    return best
