"""Immutable simple graphs stored as adjacency bit rows, plus generators and I/O.

Vertex ``v`` has neighbour set ``rows[v]``, a Python int whose bit ``u`` is set
iff ``uv`` is an edge.  Kneser vertices are numbered by the lexicographic rank
of their k-subset of ``{1..n}``; every other module relies on that order.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError, ParameterError

GENERATOR_CAP = 2**20
EXACT_CAP = 64


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def binom(a: int, b: int) -> int:
    """Binomial coefficient with ``C(a, b) = 0`` for ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances are immutable; every transformation returns a new graph.
    """

    __slots__ = ("_n", "_rows", "_labels", "_sha")

    def __init__(self, n: int, rows: Sequence[int], labels: Sequence[str] | None = None,
                 *, cap: int = GENERATOR_CAP):
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        if n > cap:
            raise ParameterError(f"graph has {n} vertices, above the cap of {cap}")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ParameterError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ParameterError(f"row {v} refers to a vertex outside 0..{n - 1}")
            if (r >> v) & 1:
                raise ParameterError(f"self-loop at vertex {v}")
            for u in iter_bits(r):
                if not (rows[u] >> v) & 1:
                    raise ParameterError(f"adjacency not symmetric at ({v}, {u})")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ParameterError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise ParameterError("vertex labels must be distinct")
        self._n = n
        self._rows = rows
        self._labels = labels
        self._sha = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None, *, cap: int = GENERATOR_CAP) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels, cap=cap)

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._n, self._rows, self._labels) == (other._n, other._rows, other._labels)

    def __hash__(self) -> int:
        return hash((self._n, self._rows, self._labels))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.num_edges})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self._n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        full = (1 << self._n) - 1
        out = []
        for u in range(self._n):
            rest = full & ~self._rows[u] & ~((1 << (u + 1)) - 1)
            out.extend((u, v) for v in iter_bits(rest))
        return out

    def is_complete(self) -> bool:
        return self.num_edges == self._n * (self._n - 1) // 2

    def vertex_name(self, v: int) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    @property
    def sha(self) -> str:
        """SHA-256 of the canonical edge structure (labels excluded)."""
        if self._sha is None:
            payload = json.dumps({"n": self._n, "edges": self.edges()}, separators=(",", ":"))
            self._sha = hashlib.sha256(payload.encode()).hexdigest()
        return self._sha


@dataclass(frozen=True)
class KneserParams:
    """Subset size ``k`` and ground-set size ``n`` of a Kneser graph."""

    k: int
    n: int

    def __post_init__(self):
        if not isinstance(self.k, int) or not isinstance(self.n, int):
            raise ParameterError("k and n must be integers")
        if self.k < 1:
            raise ParameterError(f"k must be at least 1, got {self.k}")
        if self.n < 2 * self.k:
            raise ParameterError(f"Kneser graph needs n >= 2k, got k={self.k}, n={self.n}")


def as_params(k: int | KneserParams, n: int | None = None) -> KneserParams:
    if isinstance(k, KneserParams):
        return k
    if n is None:
        raise ParameterError("n is required when k is given as an integer")
    return KneserParams(k, n)


def kneser_sets(params: KneserParams) -> list[tuple[int, ...]]:
    """The k-subsets of ``{1..n}`` in vertex-id (lexicographic) order."""
    return list(itertools.combinations(range(1, params.n + 1), params.k))


def kneser_graph(k: int | KneserParams, n: int | None = None) -> Graph:
    """Kneser graph: k-subsets of ``{1..n}``, adjacent iff disjoint."""
    params = as_params(k, n)
    count = comb(params.n, params.k)
    if count > GENERATOR_CAP:
        raise ParameterError(f"Kneser graph would have {count} vertices, above the cap of {GENERATOR_CAP}")
    sets = kneser_sets(params)
    masks = [sum(1 << x for x in s) for s in sets]
    rows = []
    for a in masks:
        r = 0
        for j, b in enumerate(masks):
            if not a & b:
                r |= 1 << j
        rows.append(r)
    labels = ["{" + ",".join(map(str, s)) + "}" for s in sets]
    return Graph(count, rows, labels)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = [full & ~r & ~(1 << v) for v, r in enumerate(g.rows)]
    return Graph(g.n, rows, g.labels)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in lexicographic order; adjacent iff they share an endpoint."""
    edges = g.edges()
    incident: list[int] = [0] * g.n
    for idx, (u, v) in enumerate(edges):
        incident[u] |= 1 << idx
        incident[v] |= 1 << idx
    rows = [(incident[u] | incident[v]) & ~(1 << idx) for idx, (u, v) in enumerate(edges)]
    labels = [f"{g.vertex_name(u)}-{g.vertex_name(v)}" for u, v in edges]
    if len(set(labels)) != len(labels):  # custom labels containing '-' can collide
        labels = [f"{u}-{v}" for u, v in edges]
    return Graph(len(edges), rows, labels)


def extended_double_cover(g: Graph) -> Graph:
    """Bipartite graph on two copies of V: ``u1 ~ v2`` iff ``u == v`` or ``uv`` is an edge.

    Copy one occupies ids ``0..n-1`` and copy two ``n..2n-1``.
    """
    n = g.n
    rows = [0] * (2 * n)
    for u in range(n):
        across = (g.rows[u] | (1 << u)) << n
        rows[u] = across
        for w in iter_bits(across):
            rows[w] |= 1 << u
    labels = [f"{g.vertex_name(v)}_1" for v in range(n)] + [f"{g.vertex_name(v)}_2" for v in range(n)]
    return Graph(2 * n, rows, labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, rows)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) drawn from ``random.Random(seed)``; the same seed gives the same graph."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ParameterError(f"need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    rng = random.Random(seed)
    return Graph.from_edges(n, (e for e in itertools.combinations(range(n), 2) if rng.random() < p))


STANDARD_NAMES = ("complete", "path", "cycle", "empty", "petersen")


def standard_graph(name: str, n: int | None = None) -> Graph:
    """Named small graphs: complete, path, cycle, empty (on ``n`` vertices) and petersen."""
    if name == "petersen":
        return kneser_graph(2, 5)
    if name not in STANDARD_NAMES:
        raise ParameterError(f"unknown graph family {name!r}; choose from {', '.join(STANDARD_NAMES)}")
    if n is None or n < 1:
        raise ParameterError(f"{name} graph needs n >= 1")
    if name == "complete":
        return Graph.from_edges(n, itertools.combinations(range(n), 2))
    if name == "empty":
        return Graph(n, [0] * n)
    if name == "path":
        return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))
    if n < 3:
        raise ParameterError("cycle graph needs n >= 3")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


# -- serialization -----------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def write_graph(g: Graph, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(graph_to_dict(g)) + "\n").encode()
    if format == "dot":
        lines = ["graph G {"]
        for v in range(g.n):
            lines.append(f"  {json.dumps(g.vertex_name(v))};")
        for u, v in g.edges():
            lines.append(f"  {json.dumps(g.vertex_name(u))} -- {json.dumps(g.vertex_name(v))};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ParameterError(f"unsupported graph format {format!r} (json or dot)")


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def read_graph(data: bytes | str, *, cap: int = GENERATOR_CAP) -> Graph:
    """Parse the JSON graph format.  DOT is export-only."""
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return graph_from_dict(obj, text=text, cap=cap)


def graph_from_dict(obj, *, text: str = "", cap: int = GENERATOR_CAP) -> Graph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("field 'n' must be a non-negative integer", *_locate(text, '"n"'))
    if n > cap:
        raise GraphFormatError(f"graph has {n} vertices, above the cap of {cap}", *_locate(text, '"n"'))
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise GraphFormatError("field 'edges' must be an array", *_locate(text, '"edges"'))
    rows = [0] * n
    prev = None
    for idx, e in enumerate(edges):
        where = _locate(text, json.dumps(e, separators=(",", ":"))) if text else (None, None)
        if where == (None, None) and text:
            where = _locate(text, json.dumps(e))
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise GraphFormatError(f"edges[{idx}] must be a pair of integers", *where)
        u, v = e
        if u == v:
            raise GraphFormatError(f"edges[{idx}] is a self-loop at vertex {u}", *where)
        if not (0 <= u < v < n):
            raise GraphFormatError(f"edges[{idx}] must satisfy 0 <= u < v < n, got {e}", *where)
        if prev is not None and (u, v) <= prev:
            kind = "duplicate" if (u, v) == prev else "out-of-order"
            raise GraphFormatError(f"edges[{idx}] is a {kind} edge {e}", *where)
        prev = (u, v)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise GraphFormatError("field 'labels' must be an array of strings", *_locate(text, '"labels"'))
        if len(labels) != n or len(set(labels)) != n:
            raise GraphFormatError(f"'labels' must hold {n} distinct strings", *_locate(text, '"labels"'))
    return Graph(n, rows, labels, cap=cap)
