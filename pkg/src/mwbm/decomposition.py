"""Weight of a maximum weight bipartite matching by repeated decomposition.

Each step peels off the heaviest edges of the working graph:

1. ``h`` is the gap between the two largest distinct weights (modified mode)
   or 1 (baseline mode).
2. ``G_h`` keeps the edges whose weight lies in ``[N-h+1, N]``; for ``h`` at
   most the gap these are exactly the heaviest edges, all of weight ``h``
   after shifting, so a maximum cardinality matching of ``G_h`` is a maximum
   weight one.
3. A minimum cover of ``G_h`` is ``h`` times a König vertex cover.
4. ``G_h^Δ`` subtracts that cover from every incident edge, dropping edges
   whose weight falls to zero or below.

The matching weight is the sum of ``h * |mm(G_h)|`` over all steps.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass

from .errors import HOutOfRange
from .graph import BipartiteGraph, Cover, WorkingGraph, top_two_weights
from .matching import (
    UnitGraph,
    VertexCoverSet,
    koenig_vertex_cover,
    max_cardinality_matching,
)


class SolveMode(str, enum.Enum):
    MODIFIED = "modified"
    BASELINE = "baseline"


@dataclass(frozen=True)
class IterationRecord:
    i: int
    h: int
    matched: int
    contribution: int
    l: int  # noqa: E741 - name matches the trace format
    distinct_weights: int
    max_weight: int
    reduction: int


@dataclass(frozen=True)
class DecompositionTrace:
    mode: SolveMode
    records: tuple[IterationRecord, ...]

    @property
    def p(self) -> int:
        return len(self.records)

    @property
    def w_prime(self) -> int:
        return sum(r.l for r in self.records)

    @property
    def total_weight_solved(self) -> int:
        return sum(r.contribution for r in self.records)

    @property
    def weighted_reductions(self) -> int:
        """``sum(l_i * h_i)``; equals ``W`` only when no edge loses ``2h`` in a step."""
        return sum(r.l * r.h for r in self.records)

    @property
    def hs(self) -> tuple[int, ...]:
        return tuple(r.h for r in self.records)

    @property
    def ls(self) -> tuple[int, ...]:
        return tuple(r.l for r in self.records)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "weight": self.total_weight_solved,
            "p": self.p,
            "w_prime": self.w_prime,
            "iterations": [asdict(r) for r in self.records],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> DecompositionTrace:
        return cls(SolveMode(d["mode"]), tuple(IterationRecord(**r) for r in d["iterations"]))


def extract_gh(g: BipartiteGraph, h: int) -> UnitGraph:
    """Unit graph of the edges whose weight lies in ``[N-h+1, N]``."""
    n = g.max_weight
    if not 1 <= h <= n:
        raise HOutOfRange(f"h={h} outside [1, {n}]")
    lo = n - h + 1
    return UnitGraph.from_pairs(g.n1, g.n2, ((e.left, e.right) for e in g.edges if e.weight >= lo))


def gh_weights(g: BipartiteGraph, h: int) -> dict[tuple[int, int], int]:
    """Shifted weights ``Wt(u,v) - (N-h)`` of the edges in ``G_h``."""
    n = g.max_weight
    if not 1 <= h <= n:
        raise HOutOfRange(f"h={h} outside [1, {n}]")
    return {(e.left, e.right): e.weight - (n - h) for e in g.edges if e.weight > n - h}


def cover_from_vc(h: int, vc: VertexCoverSet, n1: int, n2: int) -> Cover:
    """Cover with value ``h`` on the members of ``vc`` and 0 elsewhere."""
    return Cover(
        tuple(h if u in vc.left else 0 for u in range(n1)),
        tuple(h if v in vc.right else 0 for v in range(n2)),
    )


def apply_delta(g: BipartiteGraph, cover: Cover) -> tuple[BipartiteGraph, int]:
    """Subtract endpoint cover values from every edge; returns ``(G_h^Δ, l)``.

    ``l`` counts edges with at least one positively covered endpoint,
    including those that drop out.
    """
    edges = []
    touched = 0
    for u, v, w in g.edges:
        dec = cover.left[u] + cover.right[v]
        if dec > 0:
            touched += 1
            w -= dec
        if w > 0:
            edges.append((u, v, w))
    return BipartiteGraph._from_checked(g.n1, g.n2, edges), touched


def _reduce(wg: WorkingGraph, vc: VertexCoverSet, h: int) -> tuple[int, int]:
    """In-place ``apply_delta`` for a cover of ``h`` on ``vc``; returns ``(l, removed weight)``."""
    before = wg.total_weight
    touched = 0
    right = vc.right
    for u in vc.left:
        for v, w in list(wg.adj_left[u].items()):
            wg.set_weight(u, v, w - (2 * h if v in right else h))
            touched += 1
    left = vc.left
    for v in right:
        for u, w in list(wg.adj_right[v].items()):
            if u in left:
                continue
            wg.set_weight(u, v, w - h)
            touched += 1
    return touched, before - wg.total_weight


def _step_h(wg: WorkingGraph, mode: SolveMode) -> int:
    if mode is SolveMode.BASELINE:
        return 1
    h1, h2 = wg.buckets.top_two()
    return h1 - h2


def decompose(
    g: BipartiteGraph, mode: SolveMode = SolveMode.MODIFIED, *, with_cover: bool = False
) -> tuple[int, DecompositionTrace, Cover | None]:
    """Run the decomposition loop to an empty working graph.

    Returns the matching weight, the per-step trace and, if requested, the
    accumulated cover (sum of the per-step covers).
    """
    mode = SolveMode(mode)
    wg = g.working_copy()
    n1, n2 = g.n1, g.n2
    cl = [0] * n1 if with_cover else None
    cr = [0] * n2 if with_cover else None
    records: list[IterationRecord] = []
    weight = 0
    while not wg.is_empty():
        h = _step_h(wg, mode)
        distinct = len(wg.buckets)
        top = wg.buckets.top_two()[0]
        unit = UnitGraph.from_pairs(n1, n2, wg.buckets.heaviest())
        m = max_cardinality_matching(unit)
        vc = koenig_vertex_cover(unit, m)
        touched, removed = _reduce(wg, vc, h)
        k = m.cardinality
        weight += h * k
        records.append(IterationRecord(len(records) + 1, h, k, h * k, touched, distinct, top, removed))
        if with_cover:
            for u in vc.left:
                cl[u] += h
            for v in vc.right:
                cr[v] += h
    cover = Cover(tuple(cl), tuple(cr)) if with_cover else None
    return weight, DecompositionTrace(mode, tuple(records)), cover


def solve_weight(
    g: BipartiteGraph, mode: SolveMode = SolveMode.MODIFIED
) -> tuple[int, DecompositionTrace]:
    weight, trace, _ = decompose(g, mode)
    return weight, trace


def decomposition_step(g: BipartiteGraph, h: int) -> tuple[int, Cover, BipartiteGraph]:
    """One step at an explicit ``h``: ``(|mm(G_h)|, C_h, G_h^Δ)``.

    ``h`` must lie in ``[1, H1-H2]`` so that ``G_h`` has uniform weights.
    """
    h1, h2 = top_two_weights(g)
    if not 1 <= h <= h1 - h2:
        raise HOutOfRange(f"h={h} outside [1, {h1 - h2}] where G_h is uniform")
    unit = extract_gh(g, h)
    m = max_cardinality_matching(unit)
    c_h = cover_from_vc(h, koenig_vertex_cover(unit, m), g.n1, g.n2)
    delta, _ = apply_delta(g, c_h)
    return m.cardinality, c_h, delta


def check_decomposition_identity(g: BipartiteGraph, h: int) -> bool:
    """``h * |mm(G_h)| + Wt(mwm(G_h^Δ)) == Wt(mwm(G))`` for one step at ``h``."""
    k, _, delta = decomposition_step(g, h)
    return h * k + solve_weight(delta)[0] == solve_weight(g)[0]
