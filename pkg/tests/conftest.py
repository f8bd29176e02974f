"""Shared corpora and independent brute-force oracles.

The oracles here deliberately avoid the package's kernels: they work on
Python sets or networkx graphs so that a bug in the bit-row code cannot hide
itself on both sides of a comparison.
"""

from __future__ import annotations

import itertools

import networkx as nx
import pytest

from boxkit import Graph, kneser_graph, random_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(mapping), ((mapping[u], mapping[v]) for u, v in h.edges()))


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in range(g.n)]


def brute_c(g: Graph, i: int) -> int:
    """max |N(S)| over i-subsets S, by plain set intersection."""
    adj = adjacency_sets(g)
    best = 0
    for s in itertools.combinations(range(g.n), i):
        common = set(range(g.n)) - set(s)
        for v in s:
            common &= adj[v]
        best = max(best, len(common))
    return best


def brute_profile(g: Graph) -> tuple[int, ...]:
    return tuple(brute_c(g, i) for i in range(1, g.n))


def is_interval_graph_oracle(h: nx.Graph) -> bool:
    """Some ordering of the maximal cliques puts every vertex's cliques consecutively."""
    if h.number_of_nodes() == 0:
        return True
    cliques = [frozenset(c) for c in nx.find_cliques(h)]
    for order in itertools.permutations(cliques):
        ok = True
        for v in h.nodes():
            idx = [j for j, c in enumerate(order) if v in c]
            if idx[-1] - idx[0] + 1 != len(idx):
                ok = False
                break
        if ok:
            return True
    return False


def brute_boxicity(g: Graph, max_d: int = 4) -> int:
    """Smallest d such that d interval supergraphs of g intersect to g.

    Enumerates every interval supergraph (adding subsets of non-edges) and
    then searches for a smallest family whose missing edges cover all
    non-edges of g.  Only practical for a handful of non-edges.
    """
    non_edges = g.non_edges()
    if not non_edges:
        return 0
    base = to_nx(g)
    separating = []  # for each interval supergraph: the non-edges it still misses
    for mask in range(1 << len(non_edges)):
        h = base.copy()
        added = [e for j, e in enumerate(non_edges) if (mask >> j) & 1]
        h.add_edges_from(added)
        if is_interval_graph_oracle(h):
            separating.append(frozenset(e for j, e in enumerate(non_edges) if not (mask >> j) & 1))
    # keep only inclusion-maximal separating sets
    maximal = [s for s in separating if not any(s < t for t in separating)]
    target = frozenset(non_edges)
    for d in range(1, max_d + 1):
        for combo in itertools.combinations_with_replacement(maximal, d):
            if frozenset().union(*combo) == target:
                return d
    raise AssertionError("boxicity above max_d")


def atlas_graphs(max_vertices: int) -> list[Graph]:
    return [from_nx(h) for h in nx.graph_atlas_g()[1:] if h.number_of_nodes() <= max_vertices]


def seeded_random_graphs(count: int = 200, max_vertices: int = 12, seed: int = 2024) -> list[Graph]:
    out = []
    for idx in range(count):
        n = 2 + idx % (max_vertices - 1)
        p = (0.2, 0.5, 0.8)[idx % 3]
        out.append(random_graph(n, p, seed * 1_000_003 + idx))
    return out


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return kneser_graph(2, 5)


# -- acceptance reporting ------------------------------------------------------------
# test_acceptance.py records one line per criterion; they are printed together at
# the end of the run (and inline while each criterion runs).

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
