"""Weighted bipartite graphs with positive integer edge weights.

Vertices are identified by ``(side, index)`` with 0-based indices.  Only
active edges (weight >= 1) are stored; an absent pair has weight 0.
Edges are grouped into buckets keyed by their distinct weight so that the
two largest distinct weights can be read off in logarithmic time.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from collections.abc import Iterable, Iterator
from typing import NamedTuple, TextIO

from sortedcontainers import SortedDict

from .errors import (
    DuplicateEdge,
    EmptyGraph,
    IndexOutOfRange,
    ParseError,
    WeightOverflow,
    ZeroOrNegativeWeight,
)

#: Largest weight accepted anywhere (unsigned 64-bit range).
MAX_WEIGHT = 2**64 - 1


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


class VertexId(NamedTuple):
    side: Side
    index: int


class Edge(NamedTuple):
    left: int
    right: int
    weight: int


Pair = tuple[int, int]


class WeightBuckets:
    """Ordered map from distinct weight to the set of edges carrying it.

    Empty buckets are removed eagerly, so ``len(buckets)`` is the number of
    distinct weights.
    """

    __slots__ = ("_map",)

    def __init__(self) -> None:
        self._map: SortedDict = SortedDict()

    def add(self, pair: Pair, weight: int) -> None:
        bucket = self._map.get(weight)
        if bucket is None:
            self._map[weight] = {pair}
        else:
            bucket.add(pair)

    def discard(self, pair: Pair, weight: int) -> None:
        bucket = self._map[weight]
        bucket.remove(pair)
        if not bucket:
            del self._map[weight]

    def top_two(self) -> tuple[int, int]:
        n = len(self._map)
        if n == 0:
            raise EmptyGraph("graph has no active edges")
        keys = self._map.keys()
        return keys[-1], (keys[-2] if n > 1 else 0)

    def heaviest(self) -> set[Pair]:
        return self._map.peekitem(-1)[1]

    def keys(self) -> list[int]:
        return list(self._map.keys())

    def items(self) -> Iterator[tuple[int, frozenset[Pair]]]:
        for w, bucket in self._map.items():
            yield w, frozenset(bucket)

    def copy(self) -> WeightBuckets:
        other = WeightBuckets()
        other._map = SortedDict({w: set(b) for w, b in self._map.items()})
        return other

    def __len__(self) -> int:
        return len(self._map)


class WorkingGraph:
    """Mutable graph used internally by the decomposition loop."""

    __slots__ = ("n1", "n2", "adj_left", "adj_right", "buckets", "total_weight")

    def __init__(self, n1: int, n2: int) -> None:
        self.n1 = n1
        self.n2 = n2
        self.adj_left: list[dict[int, int]] = [{} for _ in range(n1)]
        self.adj_right: list[dict[int, int]] = [{} for _ in range(n2)]
        self.buckets = WeightBuckets()
        self.total_weight = 0

    def add_edge(self, u: int, v: int, w: int) -> None:
        self.adj_left[u][v] = w
        self.adj_right[v][u] = w
        self.buckets.add((u, v), w)
        self.total_weight += w

    def set_weight(self, u: int, v: int, w: int) -> None:
        """Change the weight of an existing edge; ``w <= 0`` removes it."""
        old = self.adj_left[u][v]
        self.buckets.discard((u, v), old)
        self.total_weight -= old
        if w > 0:
            self.adj_left[u][v] = w
            self.adj_right[v][u] = w
            self.buckets.add((u, v), w)
            self.total_weight += w
        else:
            del self.adj_left[u][v]
            del self.adj_right[v][u]

    def is_empty(self) -> bool:
        return len(self.buckets) == 0

    def freeze(self) -> BipartiteGraph:
        edges = [(u, v, w) for u, nbrs in enumerate(self.adj_left) for v, w in nbrs.items()]
        return BipartiteGraph._from_checked(self.n1, self.n2, edges)


class BipartiteGraph:
    """Immutable weighted bipartite graph on ``n1`` left and ``n2`` right vertices."""

    __slots__ = ("_g", "_edges")

    def __init__(self, n1: int, n2: int, edges: Iterable[tuple[int, int, int]] = ()):
        if not isinstance(n1, int) or not isinstance(n2, int) or n1 < 0 or n2 < 0:
            raise IndexOutOfRange(f"partition sizes must be nonnegative integers, got {n1!r}, {n2!r}")
        g = WorkingGraph(n1, n2)
        for u, v, w in edges:
            if not (0 <= u < n1) or not (0 <= v < n2):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside {n1}x{n2} partitions")
            if w < 1:
                raise ZeroOrNegativeWeight(f"edge ({u}, {v}) has weight {w}")
            if w > MAX_WEIGHT:
                raise WeightOverflow(f"edge ({u}, {v}) weight {w} exceeds 64-bit range")
            if v in g.adj_left[u]:
                raise DuplicateEdge(f"edge ({u}, {v}) given twice")
            g.add_edge(u, v, int(w))
        self._g = g
        self._edges: tuple[Edge, ...] | None = None

    @classmethod
    def _from_checked(cls, n1: int, n2: int, edges: Iterable[tuple[int, int, int]]) -> BipartiteGraph:
        self = cls.__new__(cls)
        g = WorkingGraph(n1, n2)
        for u, v, w in edges:
            g.add_edge(u, v, w)
        self._g = g
        self._edges = None
        return self

    @property
    def n1(self) -> int:
        return self._g.n1

    @property
    def n2(self) -> int:
        return self._g.n2

    @property
    def edges(self) -> tuple[Edge, ...]:
        """All active edges in canonical ``(left, right)`` order."""
        if self._edges is None:
            self._edges = tuple(
                Edge(u, v, self._g.adj_left[u][v])
                for u in range(self.n1)
                for v in sorted(self._g.adj_left[u])
            )
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._g.adj_left)

    @property
    def total_weight(self) -> int:
        return self._g.total_weight

    @property
    def max_weight(self) -> int:
        """Largest edge weight ``N`` (0 for an empty graph)."""
        return self._g.buckets.keys()[-1] if self._g.buckets else 0

    @property
    def num_distinct_weights(self) -> int:
        return len(self._g.buckets)

    @property
    def buckets(self) -> WeightBuckets:
        return self._g.buckets.copy()

    def weight(self, u: int, v: int) -> int:
        """Weight of pair ``(u, v)``, 0 when absent."""
        return self._g.adj_left[u].get(v, 0)

    def neighbors_left(self, u: int) -> dict[int, int]:
        return dict(self._g.adj_left[u])

    def neighbors_right(self, v: int) -> dict[int, int]:
        return dict(self._g.adj_right[v])

    def is_empty(self) -> bool:
        return self._g.is_empty()

    def working_copy(self) -> WorkingGraph:
        g = WorkingGraph(self.n1, self.n2)
        for u, nbrs in enumerate(self._g.adj_left):
            for v, w in nbrs.items():
                g.add_edge(u, v, w)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.n1, self.n2, self.edges) == (other.n1, other.n2, other.edges)

    def __hash__(self) -> int:
        return hash((self.n1, self.n2, self.edges))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n1={self.n1}, n2={self.n2}, m={self.num_edges}, W={self.total_weight})"


def build_graph(n1: int, n2: int, edges: Iterable[tuple[int, int, int]]) -> BipartiteGraph:
    """Validate and build a graph from 0-based ``(left, right, weight)`` triples."""
    return BipartiteGraph(n1, n2, edges)


def top_two_weights(g: BipartiteGraph) -> tuple[int, int]:
    """Largest and second-largest distinct weights; the second is 0 if there is only one."""
    return g._g.buckets.top_two()


def weight_gcd(g: BipartiteGraph) -> int:
    keys = g._g.buckets.keys()
    if not keys:
        raise EmptyGraph("gcd of an empty weight set")
    return math.gcd(*keys)


def scale_weights(g: BipartiteGraph, alpha: int) -> BipartiteGraph:
    """Multiply every edge weight by ``alpha``."""
    if alpha < 1:
        raise ZeroOrNegativeWeight(f"scale factor must be >= 1, got {alpha}")
    if g.max_weight * alpha > MAX_WEIGHT:
        raise WeightOverflow(f"scaling max weight {g.max_weight} by {alpha} overflows 64 bits")
    return BipartiteGraph._from_checked(g.n1, g.n2, ((u, v, w * alpha) for u, v, w in g.edges))


# --- edge-list text format -------------------------------------------------


def parse_graph(stream: TextIO | Iterable[str]) -> BipartiteGraph:
    """Read the ``p bipartite n1 n2 m`` / ``e u v w`` edge-list format (1-based)."""
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, int, int]] = []
    seen: set[Pair] = set()
    for lineno, raw in enumerate(stream, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tokens) != 5 or tokens[1] != "bipartite":
                raise ParseError("expected 'p bipartite <n1> <n2> <m>'", lineno)
            n1, n2, m = (_int_token(t, lineno) for t in tokens[2:])
            if n1 < 0 or n2 < 0 or m < 0:
                raise ParseError("negative size in problem line", lineno)
            header = (n1, n2, m)
        elif kind == "e":
            if header is None:
                raise ParseError("edge line before problem line", lineno)
            if len(tokens) != 4:
                raise ParseError("expected 'e <left> <right> <weight>'", lineno)
            u, v, w = (_int_token(t, lineno) for t in tokens[1:])
            n1, n2, _ = header
            if not (1 <= u <= n1) or not (1 <= v <= n2):
                raise IndexOutOfRange(f"line {lineno}: edge ({u}, {v}) outside {n1}x{n2} partitions")
            if w < 1:
                raise ZeroOrNegativeWeight(f"line {lineno}: weight {w} must be positive")
            if (u, v) in seen:
                raise DuplicateEdge(f"line {lineno}: edge ({u}, {v}) given twice")
            seen.add((u, v))
            edges.append((u - 1, v - 1, w))
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    if header is None:
        raise ParseError("missing problem line")
    n1, n2, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} were given")
    return BipartiteGraph(n1, n2, edges)


def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def serialize_graph(g: BipartiteGraph, out: TextIO | None = None) -> str:
    """Write ``g`` in canonical edge-list form; returns the text as well."""
    lines = [f"p bipartite {g.n1} {g.n2} {g.num_edges}"]
    lines.extend(f"e {e.left + 1} {e.right + 1} {e.weight}" for e in g.edges)
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


@dataclass(frozen=True)
class Cover:
    """Nonnegative integer potential on every vertex."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.left) or any(c < 0 for c in self.right):
            raise ValueError("cover values must be nonnegative")

    @classmethod
    def zeros(cls, n1: int, n2: int) -> Cover:
        return cls((0,) * n1, (0,) * n2)

    @property
    def weight(self) -> int:
        return sum(self.left) + sum(self.right)

    def __getitem__(self, vid: VertexId) -> int:
        return (self.left if vid.side is Side.LEFT else self.right)[vid.index]

    def __add__(self, other: Cover) -> Cover:
        if not isinstance(other, Cover):
            return NotImplemented
        return Cover(
            tuple(a + b for a, b in zip(self.left, other.left, strict=True)),
            tuple(a + b for a, b in zip(self.right, other.right, strict=True)),
        )

    def to_dict(self) -> dict:
        return {"left": list(self.left), "right": list(self.right), "weight": self.weight}

    @classmethod
    def from_dict(cls, d: dict) -> Cover:
        return cls(tuple(d["left"]), tuple(d["right"]))
